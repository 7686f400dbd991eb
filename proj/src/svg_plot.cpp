#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "lefthand/io.hpp"

namespace lefthand::io {

namespace {

constexpr double width = 720, height = 440;
constexpr double left = 80, right = 150, top = 40, bottom = 56;
constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::complex<double> pick(const ResponsePoint& r, Quantity q)
{
    switch (q) {
    case Quantity::eps: return r.eps_r;
    case Quantity::mu: return r.mu_r;
    case Quantity::n: return r.n;
    }
    return {};
}

const char* label(Quantity q)
{
    switch (q) {
    case Quantity::eps: return "&#949;_r";
    case Quantity::mu: return "&#956;_r";
    case Quantity::n: return "n";
    }
    return "";
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// Percentile-trimmed range so a local-field pole does not flatten every curve.
std::pair<double, double> value_range(std::vector<double> values)
{
    if (values.empty())
        return {-1.0, 1.0};
    std::sort(values.begin(), values.end());
    const auto at = [&](double q) { return values[static_cast<std::size_t>(q * (values.size() - 1))]; };
    double lo = at(0.005), hi = at(0.995);
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

} // namespace

const char* to_string(Quantity quantity)
{
    switch (quantity) {
    case Quantity::eps: return "eps";
    case Quantity::mu: return "mu";
    case Quantity::n: return "n";
    }
    return "?";
}

std::string render_svg(const SweepResult& result, CoherenceSource source, Quantity quantity)
{
    std::vector<const SweepTrace*> traces;
    std::vector<double> values;
    for (const auto& t : result.traces) {
        if (t.source != source)
            continue;
        traces.push_back(&t);
        for (const auto& p : t.points) {
            const auto v = pick(p.response, quantity);
            if (std::isfinite(v.real()))
                values.push_back(v.real());
            if (std::isfinite(v.imag()))
                values.push_back(v.imag());
        }
    }
    const auto [y_lo, y_hi] = value_range(values);
    const double x_lo = result.spec.Delta_e_lo, x_hi = result.spec.Delta_e_hi;
    const double pw = width - left - right, ph = height - top - bottom;
    auto sx = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
    auto sy = [&](double y) { return top + (y_hi - y) / (y_hi - y_lo) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<defs><clipPath id=\"plot\"><rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw
       << "\" height=\"" << ph << "\"/></clipPath></defs>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << label(quantity)
       << ": " << result.spec.scenario.id << " (" << to_string(source) << ")</text>\n";

    os << "<g stroke=\"#ccc\" stroke-width=\"0.5\">\n";
    for (int i = 0; i <= 4; ++i) {
        const double x = x_lo + (x_hi - x_lo) * i / 4.0;
        const double y = y_lo + (y_hi - y_lo) * i / 4.0;
        os << "<line x1=\"" << num(sx(x)) << "\" y1=\"" << top << "\" x2=\"" << num(sx(x)) << "\" y2=\"" << top + ph
           << "\"/>\n";
        os << "<line x1=\"" << left << "\" y1=\"" << num(sy(y)) << "\" x2=\"" << left + pw << "\" y2=\"" << num(sy(y))
           << "\"/>\n";
    }
    os << "</g>\n";
    if (y_lo < 0 && y_hi > 0)
        os << "<line x1=\"" << left << "\" y1=\"" << num(sy(0)) << "\" x2=\"" << left + pw << "\" y2=\"" << num(sy(0))
           << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double x = x_lo + (x_hi - x_lo) * i / 4.0;
        const double y = y_lo + (y_hi - y_lo) * i / 4.0;
        os << "<text x=\"" << num(sx(x)) << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">" << tick(x)
           << "</text>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << num(sy(y) + 4) << "\" text-anchor=\"end\">" << tick(y)
           << "</text>\n";
    }
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 14 << "\" text-anchor=\"middle\">&#916;_e/&#947;</text>\n";

    os << "<g clip-path=\"url(#plot)\" fill=\"none\" stroke-width=\"1.5\">\n";
    for (std::size_t c = 0; c < traces.size(); ++c) {
        const char* colour = palette[c % std::size(palette)];
        for (int part = 0; part < 2; ++part) {
            // A flagged or non-finite sample breaks the path.
            std::string d;
            bool pen_down = false;
            for (const auto& p : traces[c]->points) {
                const auto v = pick(p.response, quantity);
                const double y = part == 0 ? v.real() : v.imag();
                if (!std::isfinite(y)) {
                    pen_down = false;
                    continue;
                }
                const double py = std::clamp(sy(y), top - 10.0, top + ph + 10.0);
                d += (pen_down ? " L" : " M") + num(sx(p.response.Delta_e)) + ',' + num(py);
                pen_down = true;
            }
            os << "<path stroke=\"" << colour << '"' << (part == 1 ? " stroke-dasharray=\"6,4\"" : "") << " d=\""
               << d << "\"/>\n";
        }
    }
    os << "</g>\n";

    const double lx = left + pw + 14;
    os << "<g>\n";
    for (std::size_t c = 0; c < traces.size(); ++c) {
        const double ly = top + 10 + 20.0 * c;
        os << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly << "\" stroke=\""
           << palette[c % std::size(palette)] << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\">&#915;_2 = " << tick(traces[c]->Gamma2)
           << "&#947;</text>\n";
    }
    const double ly = top + 20 + 20.0 * traces.size();
    os << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly
       << "\" stroke=\"black\"/><text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\">Re</text>\n";
    os << "<line x1=\"" << lx << "\" y1=\"" << ly + 18 << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly + 18
       << "\" stroke=\"black\" stroke-dasharray=\"6,4\"/><text x=\"" << lx + 30 << "\" y=\"" << ly + 22
       << "\">Im</text>\n";
    os << "</g>\n</svg>\n";
    return os.str();
}

} // namespace lefthand::io
