#include "srcs/gantt.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace srcs {

namespace {

const char *kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                          "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
                          "#9c755f", "#bab0ac"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Bar {
  JobId id;
  Rational start, p;
  Int r;
  Rational y;  // resource-band offset
  int color = 0;
};

bool overlaps(const Bar &a, const Bar &b) {
  return a.start < Rational(b.start + b.p) && b.start < Rational(a.start + a.p);
}

}  // namespace

std::string gantt_svg(const Instance &ins, const Schedule &sched) {
  VerificationReport rep = verify_schedule(ins, sched);
  if (!rep.feasible) {
    std::string msg = "infeasible schedule";
    if (rep.first_violation) {
      const Violation &v = *rep.first_violation;
      msg += std::string(": ") +
             (v.kind == ViolationKind::Machine ? "machine" : "resource") +
             " capacity " + to_string(v.capacity) + " exceeded (demand " +
             to_string(v.demand) + ") at t=" + to_string(v.time);
    }
    throw std::invalid_argument(msg);
  }

  std::vector<Bar> bars;
  for (const Job &j : ins.jobs)
    bars.push_back({j.id, sched.starts.at(j.id), j.p, j.r, 0, 0});
  std::sort(bars.begin(), bars.end(), [](const Bar &a, const Bar &b) {
    if (a.start != b.start) return a.start < b.start;
    return a.id < b.id;
  });

  // lowest free band; zero-demand jobs get a sliver for visibility
  Rational top = ins.R;
  for (size_t i = 0; i < bars.size(); ++i) {
    Rational h = bars[i].r > 0 ? Rational(bars[i].r) : Rational(1, 4);
    std::vector<std::pair<Rational, Rational>> used;  // (y, y+h) among overlaps
    for (size_t k = 0; k < i; ++k) {
      if (!overlaps(bars[i], bars[k])) continue;
      Rational hk = bars[k].r > 0 ? Rational(bars[k].r) : Rational(1, 4);
      used.push_back({bars[k].y, Rational(bars[k].y + hk)});
    }
    std::sort(used.begin(), used.end());
    Rational y = 0;
    for (const auto &[lo, hi] : used) {
      if (Rational(y + h) <= lo) break;
      y = std::max(y, hi);
    }
    bars[i].y = y;
    top = std::max(top, Rational(y + h));

    std::vector<bool> taken(i + 1, false);
    for (size_t k = 0; k < i; ++k)
      if (overlaps(bars[i], bars[k]) && bars[k].color <= (int)i)
        taken[bars[k].color] = true;
    int c = 0;
    while (taken[c]) ++c;
    bars[i].color = c;
  }

  const double sx = 60, sy = 18, mx = 50, my = 30;
  double W = rep.makespan.convert_to<double>() * sx + 2 * mx;
  double H = top.convert_to<double>() * sy + 2 * my;
  if (W < 200) W = 200;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) +
         "\" height=\"" + fmt(H) + "\">\n";
  svg += "<text x=\"" + fmt(mx) + "\" y=\"18\" font-size=\"13\">m=" +
         ins.m.str() + " R=" + ins.R.str() +
         " makespan=" + to_string(rep.makespan) + "</text>\n";
  auto ypix = [&](const Rational &units) {
    // y axis grows upward from the bottom margin
    return H - my - units.convert_to<double>() * sy;
  };
  for (const Bar &b : bars) {
    Rational h = b.r > 0 ? Rational(b.r) : Rational(1, 4);
    double x = mx + b.start.convert_to<double>() * sx;
    double w = b.p.convert_to<double>() * sx;
    double yp = ypix(Rational(b.y + h));
    double hp = h.convert_to<double>() * sy;
    svg += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(yp) + "\" width=\"" +
           fmt(w) + "\" height=\"" + fmt(hp) + "\" fill=\"" +
           kPalette[b.color % 10] + "\" stroke=\"#333\" stroke-width=\"0.5\"/>\n";
    svg += "<text x=\"" + fmt(x + 2) + "\" y=\"" + fmt(yp + hp - 3) +
           "\" font-size=\"10\">j" + std::to_string(b.id) + "</text>\n";
  }
  // resource capacity line
  double ry = ypix(Rational(ins.R));
  svg += "<line x1=\"" + fmt(mx) + "\" y1=\"" + fmt(ry) + "\" x2=\"" +
         fmt(W - mx) + "\" y2=\"" + fmt(ry) +
         "\" stroke=\"#c00\" stroke-dasharray=\"4 3\"/>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace srcs
