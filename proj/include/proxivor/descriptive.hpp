#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "proxivor/finitetop.hpp"
#include "proxivor/rational.hpp"

namespace proxivor::desc {

struct ProbeImage {
    int width = 0;
    int height = 0;
    std::vector<std::array<std::uint8_t, 3>> pixels;  // row-major

    const std::array<std::uint8_t, 3>& at(int x, int y) const {
        return pixels[static_cast<size_t>(y) * width + x];
    }
    int index(int x, int y) const { return y * width + x; }
};

// PPM, plain (P3) and raw (P6), maxval 255 only. Comments allowed in the
// header; P6 payload starts after exactly one whitespace byte.
ProbeImage load_ppm(std::istream& in);
ProbeImage load_ppm_file(const std::string& path);
void save_ppm_p3(const ProbeImage& img, std::ostream& out);
void save_ppm_p6(const ProbeImage& img, std::ostream& out);

// Finite feature range with its own topology; labels index the carrier.
struct FeatureSpace {
    std::vector<std::string> labels;
    ftop::FiniteTopology topology;

    int label_index(const std::string& name) const;
};

// Point description: maps a point id to a feature label index.
using Probe = std::function<int(int)>;

// Image of a point set under the probe, as a label mask.
ftop::Mask describe(const std::vector<int>& points, const Probe& probe);

bool desc_strongly_near(const std::vector<int>& a, const std::vector<int>& b,
                        const Probe& probe, const ftop::ProximityRelation& strong);

// Connectedness of a subspace of a finite space via the specialization graph
// (x ~ y iff one lies in the closure of the other). Empty sets count as
// connected by convention.
bool finite_space_connected(const ftop::FiniteTopology& t, ftop::Mask a);

// Interior operator on carrier point sets; identity for discrete carriers.
using CarrierInterior = std::function<std::vector<int>(const std::vector<int>&)>;
CarrierInterior discrete_interior();

struct ConnectReport {
    bool connected = true;
    // When not connected: which piece or link fails. link i joins parts
    // i-1 and i.
    int failing_part = -1;
    int failing_link = -1;
    std::string reason;
};

// Ordered decomposition check: every piece (and its carrier interior) must
// have a connected description, and consecutive pieces must be descriptively
// strongly near.
ConnectReport desc_connected(const std::vector<std::vector<int>>& parts,
                             const Probe& probe, const FeatureSpace& fs,
                             const ftop::ProximityRelation& strong,
                             const CarrierInterior& interior = discrete_interior());

enum class Channel { R, G, B };

// Gradient direction from central differences on one channel, with the
// x-derivative as the first atan2 argument. Both derivatives zero maps to 0.
double gradient_angle(const ProbeImage& img, int x, int y, Channel channel);

// Angle interval in units of pi, endpoints exact.
struct AngleInterval {
    Rational lo, hi;
    bool lo_open = false;
    bool hi_open = false;

    bool empty() const { return lo > hi || (lo == hi && (lo_open || hi_open)); }
};

enum class ChainMode { Overlap, InteriorOverlap };

bool intervals_intersect(const AngleInterval& a, const AngleInterval& b,
                         ChainMode mode = ChainMode::Overlap);

// True iff consecutive intervals of the chain intersect (in the chosen mode).
// Every interval must be nonempty.
bool interval_chain_connected(const std::vector<AngleInterval>& chain,
                              ChainMode mode = ChainMode::Overlap);

struct PaletteEntry {
    std::string name;
    std::array<std::uint8_t, 3> rgb;
};

// Nearest palette label under squared RGB distance, ties to the earlier entry.
int quantize_color(const std::array<std::uint8_t, 3>& rgb,
                   const std::vector<PaletteEntry>& palette);

}  // namespace proxivor::desc
