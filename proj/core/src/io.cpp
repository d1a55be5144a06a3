#include "sarbox/io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

static_assert(std::endian::native == std::endian::little,
              "grid payloads are written as little-endian floats");

namespace sarbox {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegPerRad = 180.0 / kPi;

double deg_to_rad(double deg) { return deg / kDegPerRad; }
double rad_to_deg(double rad) { return rad * kDegPerRad; }

}  // namespace

ObbBox record_to_box(const DetectionRecord& rec) {
    return canonicalize_obb(rec.cx, rec.cy, rec.h, rec.w, deg_to_rad(rec.theta_deg), rec.score);
}

DetectionRecord box_to_record(const std::string& image_id, const ObbBox& box) {
    validate_box(box);
    DetectionRecord rec;
    rec.image_id = image_id;
    rec.cx = box.cx;
    rec.cy = box.cy;
    rec.w = box.w;
    rec.h = box.h;
    rec.theta_deg = rad_to_deg(wrap_angle(box.theta));
    rec.score = box.score;
    return rec;
}

DetectionRecord parse_detection_line(const std::string& line, RecordKind kind) {
    const nlohmann::json j = nlohmann::json::parse(line);
    if (!j.is_object()) throw std::runtime_error("record is not an object");
    DetectionRecord rec;
    rec.image_id = j.at("image_id").get<std::string>();
    rec.cx = j.at("cx").get<double>();
    rec.cy = j.at("cy").get<double>();
    rec.w = j.at("w").get<double>();
    rec.h = j.at("h").get<double>();
    rec.theta_deg = j.at("theta_deg").get<double>();
    if (kind == RecordKind::prediction) {
        if (!j.contains("score")) throw std::runtime_error("prediction record without score");
        rec.score = j.at("score").get<double>();
    }
    return rec;
}

std::string format_detection_line(const DetectionRecord& rec) {
    nlohmann::ordered_json j;
    j["image_id"] = rec.image_id;
    j["cx"] = rec.cx;
    j["cy"] = rec.cy;
    j["w"] = rec.w;
    j["h"] = rec.h;
    j["theta_deg"] = rec.theta_deg;
    if (rec.score) j["score"] = *rec.score;
    return j.dump();
}

DetectionSet parse_detections(std::istream& in, RecordKind kind, const std::string& source) {
    DetectionSet set;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const DetectionRecord rec = parse_detection_line(line, kind);
            set[rec.image_id].push_back({record_to_box(rec), line_no});
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << source << ":" << line_no << ": bad record: " << e.what();
            throw std::runtime_error(msg.str());
        }
    }
    return set;
}

DetectionSet parse_detections(const std::filesystem::path& path, RecordKind kind) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return parse_detections(in, kind, path.string());
}

void write_detections(std::ostream& out, const std::string& image_id,
                      const std::vector<ObbBox>& boxes) {
    for (const ObbBox& b : boxes) out << format_detection_line(box_to_record(image_id, b)) << "\n";
}

namespace {

constexpr size_t kMaxGridCells = size_t{1} << 28;  // 1 GiB of f32 payload

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

Grid read_f32grid(const std::string& bytes, const std::string& name) {
    const size_t eol = bytes.find('\n');
    if (eol == std::string::npos) throw std::runtime_error(name + ": missing F32GRID header");
    std::istringstream header(bytes.substr(0, eol));
    std::string magic;
    long long w = -1, h = -1;
    header >> magic >> w >> h;
    if (!header || magic != "F32GRID")
        throw std::runtime_error(name + ": malformed F32GRID header");
    if (w <= 0 || h <= 0 || static_cast<unsigned long long>(w) * h > kMaxGridCells)
        throw std::runtime_error(name + ": grid dimensions overflow");
    const size_t cells = static_cast<size_t>(w) * static_cast<size_t>(h);
    const size_t expected = cells * 4;
    const size_t actual = bytes.size() - (eol + 1);
    if (actual != expected) {
        std::ostringstream msg;
        msg << name << ": expected " << expected << " payload bytes, got " << actual;
        throw std::runtime_error(msg.str());
    }
    Grid g(static_cast<int>(w), static_cast<int>(h));
    const char* payload = bytes.data() + eol + 1;
    for (size_t k = 0; k < cells; ++k) {
        float f;
        std::memcpy(&f, payload + 4 * k, 4);
        g.data[k] = static_cast<double>(f);
    }
    return g;
}

Grid read_pgm(const std::string& bytes, const std::string& name) {
    size_t pos = 2;  // past "P5"
    auto next_token = [&]() -> long long {
        while (pos < bytes.size()) {
            if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
                ++pos;
            } else if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
        size_t start = pos;
        while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) ++pos;
        if (start == pos) throw std::runtime_error(name + ": malformed PGM header");
        return std::stoll(bytes.substr(start, pos - start));
    };
    const long long w = next_token();
    const long long h = next_token();
    const long long maxval = next_token();
    if (w <= 0 || h <= 0 || static_cast<unsigned long long>(w) * h > kMaxGridCells)
        throw std::runtime_error(name + ": grid dimensions overflow");
    if (maxval <= 0 || maxval > 255)
        throw std::runtime_error(name + ": only 8-bit PGM is supported");
    ++pos;  // single whitespace after maxval
    const size_t cells = static_cast<size_t>(w) * static_cast<size_t>(h);
    if (bytes.size() - pos != cells) {
        std::ostringstream msg;
        msg << name << ": expected " << cells << " payload bytes, got " << bytes.size() - pos;
        throw std::runtime_error(msg.str());
    }
    Grid g(static_cast<int>(w), static_cast<int>(h));
    for (size_t k = 0; k < cells; ++k)
        g.data[k] = static_cast<double>(static_cast<unsigned char>(bytes[pos + k])) /
                    static_cast<double>(maxval);
    return g;
}

}  // namespace

Grid read_grid(const std::filesystem::path& path) {
    const std::string bytes = slurp(path);
    if (bytes.rfind("F32GRID", 0) == 0) return read_f32grid(bytes, path.string());
    if (bytes.rfind("P5", 0) == 0) return read_pgm(bytes, path.string());
    throw std::runtime_error(path.string() + ": unrecognized grid magic");
}

void write_grid(const std::filesystem::path& path, const Grid& g) {
    if (g.width <= 0 || g.height <= 0)
        throw std::invalid_argument("write_grid: grid must be non-empty");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "F32GRID " << g.width << " " << g.height << "\n";
    for (double v : g.data) {
        const float f = static_cast<float>(v);
        char buf[4];
        std::memcpy(buf, &f, 4);
        out.write(buf, 4);
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace sarbox
