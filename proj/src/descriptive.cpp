#include "proxivor/descriptive.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace proxivor::desc {

namespace {

// Header tokens are separated by whitespace; '#' starts a comment to EOL.
// The terminating separator is left in the stream so the raw-format rule
// (exactly one whitespace byte before the payload) stays checkable.
std::string next_header_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.peek()) != EOF) {
        if (!tok.empty() && (std::isspace(c) || c == '#')) return tok;
        in.get();
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) continue;
        tok.push_back(static_cast<char>(c));
    }
    if (tok.empty()) throw Error("truncated image header");
    return tok;
}

int parse_header_int(std::istream& in, const char* what) {
    std::string tok = next_header_token(in);
    for (char ch : tok) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            throw Error(std::string("bad ") + what + " in image header: \"" + tok + "\"");
        }
    }
    return std::stoi(tok);
}

}  // namespace

ProbeImage load_ppm(std::istream& in) {
    std::string magic = next_header_token(in);
    if (magic != "P3" && magic != "P6") {
        throw Error("unsupported image magic \"" + magic + "\" (want P3 or P6)");
    }
    ProbeImage img;
    img.width = parse_header_int(in, "width");
    img.height = parse_header_int(in, "height");
    int maxval = parse_header_int(in, "maxval");
    if (img.width <= 0 || img.height <= 0) throw Error("non-positive image dimensions");
    if (maxval != 255) {
        throw Error("unsupported maxval " + std::to_string(maxval) + " (want 255)");
    }
    size_t count = static_cast<size_t>(img.width) * static_cast<size_t>(img.height);
    img.pixels.resize(count);

    if (magic == "P3") {
        for (size_t i = 0; i < count; ++i) {
            for (int ch = 0; ch < 3; ++ch) {
                int v = parse_header_int(in, "sample");
                if (v > 255) throw Error("sample exceeds maxval");
                img.pixels[i][static_cast<size_t>(ch)] = static_cast<std::uint8_t>(v);
            }
        }
    } else {
        int sep = in.get();
        if (sep == EOF || !std::isspace(sep)) {
            throw Error("missing whitespace before raw pixel data");
        }
        std::vector<char> raw(count * 3);
        in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
        if (static_cast<size_t>(in.gcount()) != raw.size()) {
            throw Error("truncated raw pixel data");
        }
        for (size_t i = 0; i < count; ++i) {
            for (int ch = 0; ch < 3; ++ch) {
                img.pixels[i][static_cast<size_t>(ch)] =
                    static_cast<std::uint8_t>(raw[i * 3 + static_cast<size_t>(ch)]);
            }
        }
    }
    return img;
}

ProbeImage load_ppm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open image file " + path);
    return load_ppm(in);
}

void save_ppm_p3(const ProbeImage& img, std::ostream& out) {
    out << "P3\n" << img.width << " " << img.height << "\n255\n";
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const auto& p = img.at(x, y);
            out << int(p[0]) << " " << int(p[1]) << " " << int(p[2]);
            out << (x + 1 == img.width ? "\n" : " ");
        }
    }
}

void save_ppm_p6(const ProbeImage& img, std::ostream& out) {
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    for (const auto& p : img.pixels) {
        out.put(static_cast<char>(p[0]));
        out.put(static_cast<char>(p[1]));
        out.put(static_cast<char>(p[2]));
    }
}

int FeatureSpace::label_index(const std::string& name) const {
    for (size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == name) return static_cast<int>(i);
    }
    throw Error("unknown feature label \"" + name + "\"");
}

ftop::Mask describe(const std::vector<int>& points, const Probe& probe) {
    ftop::Mask out = 0;
    for (int p : points) out |= (1u << probe(p));
    return out;
}

bool desc_strongly_near(const std::vector<int>& a, const std::vector<int>& b,
                        const Probe& probe, const ftop::ProximityRelation& strong) {
    return strong.near(describe(a, probe), describe(b, probe));
}

bool finite_space_connected(const ftop::FiniteTopology& t, ftop::Mask a) {
    if (a == 0) return true;
    int n = t.n;
    std::vector<int> pts;
    for (int i = 0; i < n; ++i) {
        if (a & (1u << i)) pts.push_back(i);
    }
    std::vector<ftop::Mask> cl(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) cl[i] = t.closure(1u << pts[i]);

    std::vector<char> seen(pts.size(), 0);
    std::vector<size_t> stack{0};
    seen[0] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
        size_t i = stack.back();
        stack.pop_back();
        for (size_t j = 0; j < pts.size(); ++j) {
            if (seen[j]) continue;
            bool adjacent = (cl[j] & (1u << pts[i])) || (cl[i] & (1u << pts[j]));
            if (adjacent) {
                seen[j] = 1;
                ++reached;
                stack.push_back(j);
            }
        }
    }
    return reached == pts.size();
}

CarrierInterior discrete_interior() {
    return [](const std::vector<int>& pts) { return pts; };
}

ConnectReport desc_connected(const std::vector<std::vector<int>>& parts,
                             const Probe& probe, const FeatureSpace& fs,
                             const ftop::ProximityRelation& strong,
                             const CarrierInterior& interior) {
    ConnectReport report;
    for (size_t i = 0; i < parts.size(); ++i) {
        ftop::Mask img = describe(parts[i], probe);
        if (!finite_space_connected(fs.topology, img)) {
            report.connected = false;
            report.failing_part = static_cast<int>(i);
            report.reason = "description of part " + std::to_string(i) +
                            " is disconnected";
            return report;
        }
        ftop::Mask img_int = describe(interior(parts[i]), probe);
        if (!finite_space_connected(fs.topology, img_int)) {
            report.connected = false;
            report.failing_part = static_cast<int>(i);
            report.reason = "description of the interior of part " + std::to_string(i) +
                            " is disconnected";
            return report;
        }
    }
    for (size_t i = 1; i < parts.size(); ++i) {
        if (!desc_strongly_near(parts[i - 1], parts[i], probe, strong)) {
            report.connected = false;
            report.failing_link = static_cast<int>(i);
            report.reason = "parts " + std::to_string(i - 1) + " and " +
                            std::to_string(i) + " are not descriptively strongly near";
            return report;
        }
    }
    return report;
}

double gradient_angle(const ProbeImage& img, int x, int y, Channel channel) {
    if (x < 1 || x > img.width - 2 || y < 1 || y > img.height - 2) {
        throw Error("insufficient stencil");
    }
    int ch = channel == Channel::R ? 0 : channel == Channel::G ? 1 : 2;
    double dx = (double(img.at(x + 1, y)[static_cast<size_t>(ch)]) -
                 double(img.at(x - 1, y)[static_cast<size_t>(ch)])) / 2.0;
    double dy = (double(img.at(x, y + 1)[static_cast<size_t>(ch)]) -
                 double(img.at(x, y - 1)[static_cast<size_t>(ch)])) / 2.0;
    if (dx == 0.0 && dy == 0.0) return 0.0;
    return std::atan2(dx, dy);
}

bool intervals_intersect(const AngleInterval& a, const AngleInterval& b,
                         ChainMode mode) {
    Rational lo;
    bool lo_open;
    if (a.lo > b.lo) {
        lo = a.lo;
        lo_open = a.lo_open;
    } else if (b.lo > a.lo) {
        lo = b.lo;
        lo_open = b.lo_open;
    } else {
        lo = a.lo;
        lo_open = a.lo_open || b.lo_open;
    }
    Rational hi;
    bool hi_open;
    if (a.hi < b.hi) {
        hi = a.hi;
        hi_open = a.hi_open;
    } else if (b.hi < a.hi) {
        hi = b.hi;
        hi_open = b.hi_open;
    } else {
        hi = a.hi;
        hi_open = a.hi_open || b.hi_open;
    }
    if (mode == ChainMode::InteriorOverlap) return lo < hi;
    if (lo < hi) return true;
    return lo == hi && !lo_open && !hi_open;
}

bool interval_chain_connected(const std::vector<AngleInterval>& chain,
                              ChainMode mode) {
    for (const AngleInterval& iv : chain) {
        if (iv.empty()) throw Error("degenerate interval in chain");
    }
    for (size_t i = 1; i < chain.size(); ++i) {
        if (!intervals_intersect(chain[i - 1], chain[i], mode)) return false;
    }
    return true;
}

int quantize_color(const std::array<std::uint8_t, 3>& rgb,
                   const std::vector<PaletteEntry>& palette) {
    if (palette.empty()) throw Error("empty palette");
    int best = 0;
    long best_d2 = -1;
    for (size_t i = 0; i < palette.size(); ++i) {
        long d2 = 0;
        for (int c = 0; c < 3; ++c) {
            long diff = long(rgb[static_cast<size_t>(c)]) -
                        long(palette[i].rgb[static_cast<size_t>(c)]);
            d2 += diff * diff;
        }
        if (best_d2 < 0 || d2 < best_d2) {
            best_d2 = d2;
            best = static_cast<int>(i);
        }
    }
    return best;
}

}  // namespace proxivor::desc
