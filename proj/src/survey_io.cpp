#include "elfscan/survey_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace elfscan {

namespace {

std::string format_double(double v) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) throw Error("internal: number formatting failed");
    return std::string(buf.data(), ptr);
}

double parse_double(std::string_view text, std::size_t line, const std::string& column) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ParseError(line, "bad number '" + std::string(text) + "' in column " + column);
    }
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            fields.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return fields;
}

struct ColumnLayout {
    int laptop_id = -1;
    int screen_size = -1;
    int power_source = -1;
    int side = -1;
    int point_id = -1;
    int bx = -1, by = -1, bz = -1, rms = -1;
    double bx_scale = 1.0, by_scale = 1.0, bz_scale = 1.0, rms_scale = 1.0;
};

// Measurement headers carry their unit as a suffix: bx_uT, bx_nT, ...
double unit_scale_from_header(std::string_view header, std::string_view prefix) {
    const std::string_view unit = header.substr(prefix.size());
    return unit_to_microtesla(unit_from_string(unit));
}

ColumnLayout parse_header(std::string_view line) {
    const auto fields = split_csv(line);
    ColumnLayout layout;
    auto set = [&](int& slot, int index, std::string_view name) {
        if (slot != -1) throw ParseError(1, "duplicate column '" + std::string(name) + "'");
        slot = index;
    };
    for (std::size_t i = 0; i < fields.size(); ++i) {
        const std::string_view name = fields[i];
        const int idx = static_cast<int>(i);
        if (name == "laptop_id") {
            set(layout.laptop_id, idx, name);
        } else if (name == "screen_size_in") {
            set(layout.screen_size, idx, name);
        } else if (name == "power_source") {
            set(layout.power_source, idx, name);
        } else if (name == "side") {
            set(layout.side, idx, name);
        } else if (name == "point_id") {
            set(layout.point_id, idx, name);
        } else if (name.rfind("bx_", 0) == 0) {
            set(layout.bx, idx, name);
            layout.bx_scale = unit_scale_from_header(name, "bx_");
        } else if (name.rfind("by_", 0) == 0) {
            set(layout.by, idx, name);
            layout.by_scale = unit_scale_from_header(name, "by_");
        } else if (name.rfind("bz_", 0) == 0) {
            set(layout.bz, idx, name);
            layout.bz_scale = unit_scale_from_header(name, "bz_");
        } else if (name.rfind("b_rms_", 0) == 0) {
            set(layout.rms, idx, name);
            layout.rms_scale = unit_scale_from_header(name, "b_rms_");
        } else {
            throw ParseError(1, "unknown column '" + std::string(name) + "'");
        }
    }
    if (layout.laptop_id < 0 || layout.screen_size < 0 || layout.power_source < 0 ||
        layout.side < 0 || layout.point_id < 0 || layout.bx < 0 || layout.by < 0 ||
        layout.bz < 0 || layout.rms < 0) {
        throw ParseError(1, "header is missing required columns");
    }
    return layout;
}

}  // namespace

std::vector<SurveyDataset> ingest_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw EmptyInputError(path.string() + " is empty");
    ++line_no;
    const ColumnLayout layout = parse_header(line);
    const std::size_t expected_fields = 9;

    // Cells keyed (side, power) in canonical order: top/AC, top/battery,
    // bottom/AC, bottom/battery.
    std::map<std::pair<int, int>, SurveyDataset> cells;
    std::size_t rows = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != expected_fields) {
            throw ParseError(line_no, "expected " + std::to_string(expected_fields) +
                                          " fields, found " + std::to_string(fields.size()));
        }

        SurveyRecord record;
        record.laptop_id = std::string(fields[layout.laptop_id]);
        if (record.laptop_id.empty()) throw ParseError(line_no, "empty laptop_id");
        record.screen_size_in =
            parse_double(fields[layout.screen_size], line_no, "screen_size_in");
        if (!(record.screen_size_in > 0.0)) {
            throw ParseError(line_no, "screen_size_in must be positive");
        }
        try {
            record.power_source = power_from_string(fields[layout.power_source]);
            const Side side = side_from_string(fields[layout.side]);
            record.point = MeasurementPoint::parse(fields[layout.point_id]);
            if (record.point.side != side) {
                throw InvalidInputError("point '" + record.point.id() +
                                        "' does not belong to side " + to_string(side));
            }
        } catch (const InvalidInputError& e) {
            throw ParseError(line_no, e.what());
        }

        const std::string_view bx = fields[layout.bx];
        const std::string_view by = fields[layout.by];
        const std::string_view bz = fields[layout.bz];
        const std::string_view rms_text = fields[layout.rms];
        const int components_present =
            static_cast<int>(!bx.empty()) + static_cast<int>(!by.empty()) +
            static_cast<int>(!bz.empty());
        if (components_present != 0 && components_present != 3) {
            throw ParseError(line_no, "bx/by/bz must be given together");
        }
        if (components_present == 3 && !rms_text.empty()) {
            throw ParseError(line_no, "row has both components and b_rms");
        }
        if (components_present == 0 && rms_text.empty()) {
            throw ParseError(line_no, "row has neither components nor b_rms");
        }
        if (components_present == 3) {
            record.sample = FieldSample{parse_double(bx, line_no, "bx") * layout.bx_scale,
                                        parse_double(by, line_no, "by") * layout.by_scale,
                                        parse_double(bz, line_no, "bz") * layout.bz_scale};
        } else {
            record.rms_uT = parse_double(rms_text, line_no, "b_rms") * layout.rms_scale;
        }

        const auto key = std::make_pair(static_cast<int>(record.point.side),
                                        static_cast<int>(record.power_source));
        auto [it, inserted] = cells.try_emplace(key);
        if (inserted) {
            it->second.side = record.point.side;
            it->second.power_source = record.power_source;
        }
        it->second.records.push_back(std::move(record));
        ++rows;
    }

    if (rows == 0) throw EmptyInputError(path.string() + " has no survey rows");

    std::vector<SurveyDataset> datasets;
    datasets.reserve(cells.size());
    for (auto& [key, dataset] : cells) datasets.push_back(std::move(dataset));
    return datasets;
}

void write_survey_csv(const std::filesystem::path& path,
                      const std::vector<SurveyDataset>& datasets) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "laptop_id,screen_size_in,power_source,side,point_id,bx_uT,by_uT,bz_uT,b_rms_uT\n";
    for (const auto& dataset : datasets) {
        for (const auto& rec : dataset.records) {
            out << rec.laptop_id << ',' << format_double(rec.screen_size_in) << ','
                << to_string(rec.power_source) << ',' << to_string(rec.point.side) << ','
                << rec.point.id() << ',';
            if (rec.sample) {
                out << format_double(rec.sample->bx_uT) << ',' << format_double(rec.sample->by_uT)
                    << ',' << format_double(rec.sample->bz_uT) << ',';
            } else {
                out << ",,,";
            }
            if (rec.rms_uT) out << format_double(*rec.rms_uT);
            out << '\n';
        }
    }
    if (!out) throw IoError("short write to " + path.string());
}

std::map<std::string, LaptopModel> read_model_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    std::map<std::string, LaptopModel> models;
    LaptopModel* current_laptop = nullptr;
    WireSegmentPath* current_path = nullptr;
    std::size_t path_line = 0;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = trim(line);
        if (const auto hash = text.find('#'); hash != std::string_view::npos) {
            text = trim(text.substr(0, hash));
        }
        if (text.empty()) continue;

        std::istringstream tokens{std::string(text)};
        std::string word;
        tokens >> word;

        if (word == "laptop") {
            if (current_path) throw ParseError(line_no, "'laptop' inside an open path block");
            std::string id;
            double screen = 0.0;
            if (!(tokens >> id >> screen) || !(screen > 0.0)) {
                throw ParseError(line_no, "expected: laptop <id> <screen_size_in>");
            }
            auto [it, inserted] = models.try_emplace(id);
            if (!inserted) throw ParseError(line_no, "duplicate laptop '" + id + "'");
            it->second.screen_size_in = screen;
            current_laptop = &it->second;
        } else if (word == "path") {
            if (!current_laptop) throw ParseError(line_no, "'path' before any 'laptop'");
            if (current_path) throw ParseError(line_no, "'path' inside an open path block");
            double current = 0.0;
            if (!(tokens >> current)) throw ParseError(line_no, "expected: path <current_A>");
            current_laptop->wires.paths.push_back({{}, current});
            current_path = &current_laptop->wires.paths.back();
            path_line = line_no;
        } else if (word == "end") {
            if (!current_path) throw ParseError(line_no, "'end' without an open path block");
            if (current_path->vertices.size() < 2) {
                throw ParseError(line_no, "path needs at least 2 vertices");
            }
            current_path = nullptr;
        } else {
            if (!current_path) {
                throw ParseError(line_no, "unexpected '" + word + "' outside a path block");
            }
            std::istringstream vertex_tokens{std::string(text)};
            Vec3 v;
            if (!(vertex_tokens >> v.x >> v.y >> v.z)) {
                throw ParseError(line_no, "expected a vertex: <x> <y> <z>");
            }
            std::string extra;
            if (vertex_tokens >> extra) throw ParseError(line_no, "trailing tokens after vertex");
            if (!current_path->vertices.empty() && current_path->vertices.back() == v) {
                throw ParseError(line_no, "consecutive vertices coincide");
            }
            current_path->vertices.push_back(v);
        }
    }
    if (current_path) throw ParseError(path_line, "unterminated path block");
    if (models.empty()) throw EmptyInputError(path.string() + " defines no laptops");
    return models;
}

void write_model_file(const std::filesystem::path& path,
                      const std::map<std::string, LaptopModel>& models) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    for (const auto& [id, model] : models) {
        out << "laptop " << id << ' ' << format_double(model.screen_size_in) << '\n';
        for (const auto& wire : model.wires.paths) {
            out << "path " << format_double(wire.current_A) << '\n';
            for (const auto& v : wire.vertices) {
                out << "  " << format_double(v.x) << ' ' << format_double(v.y) << ' '
                    << format_double(v.z) << '\n';
            }
            out << "end\n";
        }
    }
    if (!out) throw IoError("short write to " + path.string());
}

}  // namespace elfscan
