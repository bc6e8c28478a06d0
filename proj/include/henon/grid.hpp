#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "henon/green.hpp"

namespace henon {

enum class GridMode { GPlus, GMinus, GMax, KMembership };

const char* grid_mode_name(GridMode m);

// A 2-real-dimensional affine slice of C^2: z(u,v) = base + u*du + v*dv.
// The default is the real (x,y) plane.
struct SliceDef {
    Point2 base{};
    Point2 du{Complex{1.0, 0.0}, Complex{}};
    Point2 dv{Complex{}, Complex{1.0, 0.0}};
    std::string describe() const;
};

struct GridJob {
    double center_u = 0.0, center_v = 0.0;
    double width = 5.0, height = 5.0;
    int resolution = 64;  // pixels per side
    SliceDef slice;
    GridMode mode = GridMode::KMembership;
    int budget = 200;
    int threads = 0;  // 0 = hardware concurrency; never affects the output bytes
};

// K-membership pixel codes.
//   0 = bounded both ways within budget (in-K candidate)
//   1 = escaped forward only, 2 = escaped backward only, 3 = escaped both
struct GridResult {
    int rows = 0, cols = 0;
    std::vector<double> values;  // row-major, v ascending with the row index
    GridJob job;
    double vmin = 0.0, vmax = 0.0, mean = 0.0;
    long escaped_pixels = 0;
};

// Deterministic: identical jobs produce bit-identical grids regardless of the
// worker count. Work is distributed over rows; no cross-pixel dependency.
GridResult rasterize_grid(const HenonChain& h, const GridJob& job);
GridResult rasterize_grid(const GreenContext& ctx, const GridJob& job);

// `# henon-grid v1, ...` header plus resolution rows of comma-separated
// decimal values.
void write_grid_csv(const GridResult& g, std::ostream& os);
std::string grid_csv_string(const GridResult& g);

// 16-bit binary PGM (P5, maxval 65535), values affinely mapped from
// [0, vmax]; the mapping is recorded in the sidecar text returned by
// grid_meta_string. Byte-reproducible for a fixed job.
std::string grid_pgm_string(const GridResult& g);
std::string grid_meta_string(const GridResult& g);
void write_grid_pgm(const GridResult& g, const std::string& path_base);

}  // namespace henon
