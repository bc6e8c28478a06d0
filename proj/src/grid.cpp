#include "henon/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "henon/errors.hpp"

namespace henon {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_complex(Complex z) {
    return fmt_double(z.real()) + "+" + fmt_double(z.imag()) + "i";
}

double green_value(const kernels::OrbitOutcome& o, long degree) {
    const bool escaped = o.first_entry >= 0 || o.reason == kernels::StopReason::Overflow;
    if (!escaped) return 0.0;
    const double m2x = o.x.real() * o.x.real() + o.x.imag() * o.x.imag();
    const double m2y = o.y.real() * o.y.real() + o.y.imag() * o.y.imag();
    const double v = 0.5 * std::log(std::max(m2x, m2y)) *
                     std::pow(static_cast<double>(degree), -static_cast<double>(o.steps));
    return v > 0.0 ? v : 0.0;
}

void raster_rows(const kernels::FlatChain& flat, const GridJob& job, int row_begin, int row_end,
                 std::vector<double>& values) {
    const int n = job.resolution;
    const double u0 = job.center_u - 0.5 * job.width;
    const double v0 = job.center_v - 0.5 * job.height;
    const double du = job.width / n;
    const double dv = job.height / n;

    kernels::OrbitBatchFn kernel = kernels::select_orbit_kernel();
    Point2 pts[4];
    kernels::OrbitOutcome fwd[4], bwd[4];

    const bool needs_fwd = job.mode != GridMode::GMinus;
    const bool needs_bwd = job.mode != GridMode::GPlus;
    kernels::OrbitParams pf, pb;
    pf.budget = pb.budget = job.budget;
    pf.backward = false;
    pb.backward = true;
    pf.stop_on_entry = pb.stop_on_entry = job.mode == GridMode::KMembership;

    for (int r = row_begin; r < row_end; ++r) {
        const double v = v0 + (r + 0.5) * dv;
        for (int c0 = 0; c0 < n; c0 += 4) {
            const int count = std::min(4, n - c0);
            for (int l = 0; l < count; ++l) {
                const double u = u0 + (c0 + l + 0.5) * du;
                pts[l].x = job.slice.base.x + u * job.slice.du.x + v * job.slice.dv.x;
                pts[l].y = job.slice.base.y + u * job.slice.du.y + v * job.slice.dv.y;
            }
            if (needs_fwd) kernel(flat, pts, count, pf, fwd);
            if (needs_bwd) kernel(flat, pts, count, pb, bwd);
            for (int l = 0; l < count; ++l) {
                double val = 0.0;
                switch (job.mode) {
                    case GridMode::GPlus: val = green_value(fwd[l], flat.degree); break;
                    case GridMode::GMinus: val = green_value(bwd[l], flat.degree); break;
                    case GridMode::GMax:
                        val = std::max(green_value(fwd[l], flat.degree),
                                       green_value(bwd[l], flat.degree));
                        break;
                    case GridMode::KMembership: {
                        auto escaped = [](const kernels::OrbitOutcome& o) {
                            return o.first_entry >= 0 ||
                                   o.reason == kernels::StopReason::Overflow;
                        };
                        val = (escaped(fwd[l]) ? 1.0 : 0.0) + (escaped(bwd[l]) ? 2.0 : 0.0);
                        break;
                    }
                }
                values[static_cast<size_t>(r) * n + c0 + l] = val;
            }
        }
    }
}

}  // namespace

const char* grid_mode_name(GridMode m) {
    switch (m) {
        case GridMode::GPlus: return "gplus";
        case GridMode::GMinus: return "gminus";
        case GridMode::GMax: return "gmax";
        case GridMode::KMembership: return "k";
    }
    return "?";
}

std::string SliceDef::describe() const {
    return "base=(" + fmt_complex(base.x) + "," + fmt_complex(base.y) + ");du=(" +
           fmt_complex(du.x) + "," + fmt_complex(du.y) + ");dv=(" + fmt_complex(dv.x) + "," +
           fmt_complex(dv.y) + ")";
}

GridResult rasterize_grid(const GreenContext& ctx, const GridJob& job) {
    if (job.resolution < 1) throw PreconditionViolated("grid resolution must be >= 1");
    if (job.budget < 1) throw PreconditionViolated("grid budget must be >= 1");

    GridResult g;
    g.rows = g.cols = job.resolution;
    g.job = job;
    g.values.assign(static_cast<size_t>(g.rows) * g.cols, 0.0);

    unsigned nthreads = job.threads > 0 ? static_cast<unsigned>(job.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(g.rows));

    if (nthreads <= 1) {
        raster_rows(ctx.flat, job, 0, g.rows, g.values);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(nthreads);
        const int per = (g.rows + static_cast<int>(nthreads) - 1) / static_cast<int>(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) {
            const int lo = static_cast<int>(t) * per;
            const int hi = std::min(g.rows, lo + per);
            if (lo >= hi) break;
            workers.emplace_back([&, lo, hi] { raster_rows(ctx.flat, job, lo, hi, g.values); });
        }
        for (auto& w : workers) w.join();
    }

    // Summary statistics, combined in a fixed traversal order.
    g.vmin = g.vmax = g.values.empty() ? 0.0 : g.values[0];
    double sum = 0.0;
    for (double v : g.values) {
        g.vmin = std::min(g.vmin, v);
        g.vmax = std::max(g.vmax, v);
        sum += v;
        if (v > 0.0) g.escaped_pixels += 1;
    }
    g.mean = g.values.empty() ? 0.0 : sum / static_cast<double>(g.values.size());
    return g;
}

GridResult rasterize_grid(const HenonChain& h, const GridJob& job) {
    return rasterize_grid(GreenContext{h}, job);
}

void write_grid_csv(const GridResult& g, std::ostream& os) {
    os << "# henon-grid v1, mode=" << grid_mode_name(g.job.mode) << ", window="
       << fmt_double(g.job.center_u) << "," << fmt_double(g.job.center_v) << ","
       << fmt_double(g.job.width) << "," << fmt_double(g.job.height)
       << ", slice=" << g.job.slice.describe() << ", budget=" << g.job.budget << "\n";
    for (int r = 0; r < g.rows; ++r) {
        for (int c = 0; c < g.cols; ++c) {
            if (c) os << ",";
            os << fmt_double(g.values[static_cast<size_t>(r) * g.cols + c]);
        }
        os << "\n";
    }
}

std::string grid_csv_string(const GridResult& g) {
    std::ostringstream ss;
    write_grid_csv(g, ss);
    return ss.str();
}

std::string grid_pgm_string(const GridResult& g) {
    std::string s = "P5\n" + std::to_string(g.cols) + " " + std::to_string(g.rows) + "\n65535\n";
    s.reserve(s.size() + static_cast<size_t>(g.rows) * g.cols * 2);
    // Image rows run top-down; the grid's v axis ascends with the row index.
    for (int r = g.rows - 1; r >= 0; --r) {
        for (int c = 0; c < g.cols; ++c) {
            const double v = g.values[static_cast<size_t>(r) * g.cols + c];
            long pix = g.vmax > 0.0 ? std::lround(65535.0 * v / g.vmax) : 0;
            pix = std::clamp(pix, 0L, 65535L);
            s.push_back(static_cast<char>((pix >> 8) & 0xff));
            s.push_back(static_cast<char>(pix & 0xff));
        }
    }
    return s;
}

std::string grid_meta_string(const GridResult& g) {
    std::ostringstream ss;
    ss << "henon-grid-pgm v1\n"
       << "mode=" << grid_mode_name(g.job.mode) << "\n"
       << "window=" << fmt_double(g.job.center_u) << "," << fmt_double(g.job.center_v) << ","
       << fmt_double(g.job.width) << "," << fmt_double(g.job.height) << "\n"
       << "slice=" << g.job.slice.describe() << "\n"
       << "budget=" << g.job.budget << "\n"
       << "resolution=" << g.job.resolution << "\n"
       << "vmin=" << fmt_double(g.vmin) << "\n"
       << "vmax=" << fmt_double(g.vmax) << "\n"
       << "mapping=pgm_value = round(65535 * value / vmax), 0 when vmax <= 0\n"
       << "row_order=top row is the largest v\n";
    return ss.str();
}

void write_grid_pgm(const GridResult& g, const std::string& path_base) {
    {
        std::ofstream f(path_base + ".pgm", std::ios::binary);
        if (!f) throw ValidationError("cannot open " + path_base + ".pgm for writing");
        const std::string s = grid_pgm_string(g);
        f.write(s.data(), static_cast<std::streamsize>(s.size()));
    }
    {
        std::ofstream f(path_base + ".meta");
        if (!f) throw ValidationError("cannot open " + path_base + ".meta for writing");
        f << grid_meta_string(g);
    }
}

}  // namespace henon
