#ifndef ROOTCORR_IO_HPP
#define ROOTCORR_IO_HPP

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rootcorr/genseq.hpp"
#include "rootcorr/paircorr.hpp"
#include "rootcorr/rootfind.hpp"

namespace rootcorr {

using Json = nlohmann::ordered_json;

// floats in CSV output carry 17 significant digits
inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
}

// single-line JSON sidecar `<path>.meta.json`
inline void write_meta(const std::string& path, const Json& meta) {
    write_text_file(path + ".meta.json", meta.dump() + "\n");
}

inline std::string csv_gen(const PolySequence& seq) {
    std::string out = "m,k,re,im\n";
    for (size_t m = 0; m < seq.items.size(); ++m) {
        const Poly& p = seq.items[m];
        for (int k = 0; k <= std::max(0, p.degree()); ++k) {
            const GaussianRational& c = p[k];
            out += std::to_string(m) + "," + std::to_string(k) + "," +
                   to_string(c.re) + "," + to_string(c.im) + "\n";
        }
    }
    return out;
}

inline std::string csv_roots(const std::vector<RootRecord>& records) {
    std::string out = "m,p,q,re,im,mult,method\n";
    for (const RootRecord& r : records)
        out += std::to_string(r.m) + "," + std::to_string(r.p) + "," +
               std::to_string(r.q) + "," + fmt_double(r.z.real()) + "," +
               fmt_double(r.z.imag()) + "," + std::to_string(r.mult) + "," +
               (r.degenerate ? "degenerate" : r.method) + "\n";
    return out;
}

inline std::string csv_curve(const std::vector<CurveSample>& samples) {
    std::string out = "c,re,im\n";
    for (const CurveSample& s : samples)
        for (Complex z : s.points)
            out += fmt_double(s.c) + "," + fmt_double(z.real()) + "," +
                   fmt_double(z.imag()) + "\n";
    return out;
}

inline std::string csv_arc(const ArcSpec& spec) {
    std::string out = "t,re_f,im_f,fprime_mag\n";
    for (size_t i = 0; i < spec.ts.size(); ++i)
        out += fmt_double(spec.ts[i]) + "," + fmt_double(spec.zs[i].real()) + "," +
               fmt_double(spec.zs[i].imag()) + "," + fmt_double(spec.fps[i]) + "\n";
    return out;
}

inline std::string csv_paircorr(const std::vector<PairCorrCurve>& curves) {
    std::string out = "lambda,value,kind\n";
    for (const PairCorrCurve& c : curves)
        for (size_t i = 0; i < c.lambdas.size(); ++i)
            out += fmt_double(c.lambdas[i]) + "," + fmt_double(c.values[i]) + "," +
                   c.kind + "\n";
    return out;
}

// Minimal static scatter plot: axes box plus one circle per point.
inline std::string svg_scatter(const std::vector<Complex>& pts,
                               const std::string& caption) {
    const double W = 800, H = 600, margin = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (Complex z : pts) {
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
    }
    if (pts.empty()) xmin = ymin = -1, xmax = ymax = 1;
    double padx = std::max(1e-6, 0.05 * (xmax - xmin));
    double pady = std::max(1e-6, 0.05 * (ymax - ymin));
    xmin -= padx; xmax += padx; ymin -= pady; ymax += pady;
    auto sx = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (W - 2 * margin); };
    auto sy = [&](double y) { return H - margin - (y - ymin) / (ymax - ymin) * (H - 2 * margin); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n";
    out += "<rect x=\"" + fmt_double(margin) + "\" y=\"" + fmt_double(margin) +
           "\" width=\"" + fmt_double(W - 2 * margin) + "\" height=\"" +
           fmt_double(H - 2 * margin) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (Complex z : pts)
        out += "<circle cx=\"" + fmt_double(sx(z.real())) + "\" cy=\"" +
               fmt_double(sy(z.imag())) + "\" r=\"2\" fill=\"steelblue\"/>\n";
    out += "<text x=\"" + fmt_double(W / 2) + "\" y=\"" + fmt_double(H - 15) +
           "\" text-anchor=\"middle\" font-size=\"14\">" + caption + "</text>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace rootcorr

#endif
