#pragma once

// CSV layouts of the pipeline's artifacts.

#include <zetadrive/csv.hpp>
#include <zetadrive/measurement.hpp>
#include <zetadrive/primes.hpp>
#include <zetadrive/waveform.hpp>
#include <zetadrive/zero_finder.hpp>

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace zetadrive::io {

using csv::format_double;

inline void write_waveform(std::ostream& os, const WaveformTable& w) {
  os << "t,f\n";
  for (std::size_t i = 0; i < w.t.size(); ++i) {
    os << format_double(w.t[i]) << ',' << format_double(w.f[i]) << '\n';
  }
}

inline WaveformTable read_waveform(std::istream& is) {
  const auto t = csv::read_table(is);
  const auto ct = t.column("t"), cf = t.column("f");
  WaveformTable w;
  for (const auto& r : t.rows) {
    w.t.push_back(csv::parse_double(r[ct]));
    w.f.push_back(csv::parse_double(r[cf]));
  }
  return w;
}

inline void write_scan(std::ostream& os, const std::vector<ScanRecord>& recs,
                       const std::vector<int>& n_list = default_n_list()) {
  os << "E,omega,S,deltaS,shots,seed";
  for (int n : n_list) os << ",P" << n;
  os << '\n';
  for (const auto& r : recs) {
    os << format_double(r.E) << ',' << format_double(r.omega) << ',' << format_double(r.S) << ','
       << format_double(r.deltaS) << ',' << r.shots << ',' << r.seed;
    for (double p : r.P_hat) os << ',' << format_double(p);
    os << '\n';
  }
}

inline std::vector<ScanRecord> read_scan(std::istream& is) {
  const auto t = csv::read_table(is);
  const auto cE = t.column("E"), cO = t.column("omega"), cS = t.column("S"),
             cD = t.column("deltaS"), cN = t.column("shots"), cSeed = t.column("seed");
  std::vector<std::size_t> cP;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i].size() > 1 && t.header[i][0] == 'P') cP.push_back(i);
  }
  std::vector<ScanRecord> out;
  for (const auto& r : t.rows) {
    ScanRecord s;
    s.E = csv::parse_double(r[cE]);
    s.omega = csv::parse_double(r[cO]);
    s.S = csv::parse_double(r[cS]);
    s.deltaS = csv::parse_double(r[cD]);
    s.shots = static_cast<int>(csv::parse_int(r[cN]));
    s.seed = static_cast<std::uint64_t>(csv::parse_int(r[cSeed]));
    for (auto c : cP) s.P_hat.push_back(csv::parse_double(r[c]));
    if (!std::isfinite(s.S)) s.error = "non-finite S in input";
    out.push_back(std::move(s));
  }
  return out;
}

inline void write_zeros(std::ostream& os, const std::vector<ZeroEstimate>& zs) {
  os << "index,kind,E_mean,E_std,n_retained,exact_E,abs_error\n";
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const auto& z = zs[i];
    os << i + 1 << ',' << to_string(z.kind) << ',' << format_double(z.mean) << ','
       << format_double(z.std) << ',' << z.n_retained << ',';
    if (const auto exact = nearest_known_zero(z.mean)) {
      os << format_double(*exact) << ',' << format_double(std::abs(z.mean - *exact));
    } else {
      os << ',';
    }
    os << '\n';
  }
}

/// E_mean column of a zeros CSV, optionally only rows of kind riemann.
inline std::vector<double> read_zero_means(std::istream& is, bool riemann_only) {
  const auto t = csv::read_table(is);
  const auto cE = t.column("E_mean");
  std::optional<std::size_t> cK;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i] == "kind") cK = i;
  }
  std::vector<double> out;
  for (const auto& r : t.rows) {
    if (riemann_only && cK && r[*cK] != "riemann") continue;
    out.push_back(csv::parse_double(r[cE]));
  }
  return out;
}

struct QuasienergyRow {
  double E, omega, epsilon;
  cplx jeff;
};

inline void write_quasienergy(std::ostream& os, const std::vector<QuasienergyRow>& rows) {
  os << "E,omega,epsilon,re_jeff,im_jeff\n";
  for (const auto& r : rows) {
    os << format_double(r.E) << ',' << format_double(r.omega) << ',' << format_double(r.epsilon)
       << ',' << format_double(r.jeff.real()) << ',' << format_double(r.jeff.imag()) << '\n';
  }
}

inline void write_staircase(std::ostream& os, const std::vector<double>& x,
                            const std::vector<double>& h, const std::vector<double>& J) {
  os << "x,h,J\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << format_double(x[i]) << ',' << format_double(h[i]) << ',' << format_double(J[i]) << '\n';
  }
}

inline void write_peaks(std::ostream& os, const std::vector<PrimePeak>& peaks) {
  os << "x_peak,height,nearest_target,offset\n";
  for (const auto& p : peaks) {
    os << format_double(p.x_peak) << ',' << format_double(p.height) << ','
       << format_double(p.nearest_target) << ',' << format_double(p.offset) << '\n';
  }
}

struct VerifyRow {
  double E, direct, vdp, diff;
};

inline void write_verify(std::ostream& os, const std::vector<VerifyRow>& rows) {
  os << "E,re_g_direct,re_g_vdp,abs_diff\n";
  for (const auto& r : rows) {
    os << format_double(r.E) << ',' << format_double(r.direct) << ',' << format_double(r.vdp) << ','
       << format_double(r.diff) << '\n';
  }
}

}  // namespace zetadrive::io
