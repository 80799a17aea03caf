#include "symucc/integrals.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "symucc/errors.hpp"

namespace symucc {

namespace {

std::size_t pair_index(std::size_t p, std::size_t q) {
  if (p < q) std::swap(p, q);
  return p * (p + 1) / 2 + q;
}

std::size_t packed_size(std::size_t n) {
  const std::size_t pairs = n * (n + 1) / 2;
  return pairs * (pairs + 1) / 2;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

long parse_int(const std::string& token, const std::string& key) {
  long value = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("FCIDUMP header: bad integer '" + token + "' for " + key);
  }
  return value;
}

double parse_real(std::string token) {
  // Fortran emitters sometimes write 1.0D-03.
  for (auto& c : token) {
    if (c == 'D' || c == 'd') c = 'E';
  }
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || token.empty()) {
    throw ParseError("FCIDUMP body: bad number '" + token + "'");
  }
  return v;
}

// Split the namelist between "&FCI" and its terminator into KEY -> values.
std::map<std::string, std::vector<std::string>> parse_namelist(
    std::string_view header) {
  std::string text = upper(header);
  for (auto& c : text) {
    if (c == ',') c = ' ';
  }
  // Make "KEY=" and "KEY =" and "KEY= 3" all tokenize the same way.
  std::string spaced;
  for (char c : text) {
    if (c == '=') {
      spaced += " = ";
    } else {
      spaced += c;
    }
  }
  std::istringstream in(spaced);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);

  std::map<std::string, std::vector<std::string>> fields;
  std::string current;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (k + 1 < tokens.size() && tokens[k + 1] == "=") {
      current = tokens[k];
      if (fields.count(current)) {
        throw ParseError("FCIDUMP header: duplicate key " + current);
      }
      fields[current];
      ++k;
      continue;
    }
    if (tokens[k] == "=") throw ParseError("FCIDUMP header: stray '='");
    if (current.empty()) {
      throw ParseError("FCIDUMP header: value '" + tokens[k] +
                       "' before any key");
    }
    fields[current].push_back(tokens[k]);
  }
  return fields;
}

long single_int(const std::map<std::string, std::vector<std::string>>& f,
                const std::string& key, std::optional<long> fallback) {
  auto it = f.find(key);
  if (it == f.end()) {
    if (fallback) return *fallback;
    throw ParseError("FCIDUMP header: missing " + key);
  }
  if (it->second.size() != 1) {
    throw ParseError("FCIDUMP header: " + key + " expects one value");
  }
  return parse_int(it->second.front(), key);
}

}  // namespace

IntegralTable::IntegralTable(std::size_t n_spatial, std::size_t n_electrons,
                             std::vector<int> orbsym)
    : n_spatial_(n_spatial),
      n_electrons_(n_electrons),
      one_body_(n_spatial * n_spatial, 0.0),
      two_body_(packed_size(n_spatial), 0.0) {
  if (n_electrons % 2 != 0) {
    throw UnsupportedReference("odd electron count " +
                               std::to_string(n_electrons) +
                               ": only closed-shell references are supported");
  }
  if (n_electrons / 2 > n_spatial) {
    throw ParseError("more doubly occupied orbitals than spatial orbitals");
  }
  if (orbsym.empty()) orbsym.assign(n_spatial, 1);
  set_orbsym(std::move(orbsym));
}

void IntegralTable::set_orbsym(std::vector<int> orbsym) {
  if (orbsym.size() != n_spatial_) {
    throw ParseError("ORBSYM has " + std::to_string(orbsym.size()) +
                     " entries, expected " + std::to_string(n_spatial_));
  }
  for (int e : orbsym) {
    if (e < 1 || e > 8) {
      throw ParseError("ORBSYM entry " + std::to_string(e) +
                       " outside [1, 8]");
    }
  }
  orbsym_ = std::move(orbsym);
}

void IntegralTable::set_h1(std::size_t p, std::size_t q, double v) {
  one_body_[p * n_spatial_ + q] = v;
  one_body_[q * n_spatial_ + p] = v;
}

std::size_t IntegralTable::eri_index(std::size_t p, std::size_t q,
                                     std::size_t r, std::size_t s) {
  return pair_index(pair_index(p, q), pair_index(r, s));
}

void IntegralTable::set_eri(std::size_t p, std::size_t q, std::size_t r,
                            std::size_t s, double v) {
  two_body_[eri_index(p, q, r, s)] = v;
}

void IntegralTable::drop_below(double threshold) {
  auto clip = [threshold](double& v) {
    if (std::abs(v) < threshold) v = 0.0;
  };
  std::for_each(one_body_.begin(), one_body_.end(), clip);
  std::for_each(two_body_.begin(), two_body_.end(), clip);
  if (std::abs(core_energy_) < threshold) core_energy_ = 0.0;
}

IntegralTable parse_fcidump(std::string_view text) {
  const std::string up = upper(text);
  const auto start = up.find("&FCI");
  if (start == std::string::npos) throw ParseError("FCIDUMP: missing &FCI");

  std::size_t header_end = std::string::npos;
  std::size_t body_start = std::string::npos;
  const auto amp_end = up.find("&END", start);
  const auto slash = up.find('/', start);
  if (amp_end != std::string::npos &&
      (slash == std::string::npos || amp_end < slash)) {
    header_end = amp_end;
    body_start = amp_end + 4;
  } else if (slash != std::string::npos) {
    header_end = slash;
    body_start = slash + 1;
  } else {
    throw ParseError("FCIDUMP: header not terminated by &END or /");
  }

  const auto fields =
      parse_namelist(text.substr(start + 4, header_end - start - 4));
  const long norb = single_int(fields, "NORB", std::nullopt);
  const long nelec = single_int(fields, "NELEC", std::nullopt);
  const long ms2 = single_int(fields, "MS2", 0);
  if (norb <= 0) throw ParseError("FCIDUMP header: NORB must be positive");
  if (nelec < 0) throw ParseError("FCIDUMP header: NELEC must be >= 0");
  if (nelec % 2 != 0 || ms2 != 0) {
    throw UnsupportedReference(
        "open-shell FCIDUMP (NELEC=" + std::to_string(nelec) +
        ", MS2=" + std::to_string(ms2) + "): closed-shell reference required");
  }

  std::vector<int> orbsym;
  if (auto it = fields.find("ORBSYM"); it != fields.end()) {
    for (const auto& v : it->second) {
      orbsym.push_back(static_cast<int>(parse_int(v, "ORBSYM")));
    }
    if (orbsym.size() != static_cast<std::size_t>(norb)) {
      throw ParseError("FCIDUMP header: ORBSYM length " +
                       std::to_string(orbsym.size()) + " != NORB " +
                       std::to_string(norb));
    }
  }

  IntegralTable table(static_cast<std::size_t>(norb),
                      static_cast<std::size_t>(nelec), std::move(orbsym));

  // Skip the remainder of the terminator line.
  std::istringstream body{std::string(text.substr(body_start))};
  std::string line;
  std::getline(body, line);
  std::size_t line_no = 0;
  while (std::getline(body, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 5) {
      throw ParseError("FCIDUMP body line " + std::to_string(line_no) +
                       ": expected 'value i j k l'");
    }
    const double value = parse_real(tok[0]);
    long idx[4];
    for (int k = 0; k < 4; ++k) {
      idx[k] = parse_int(tok[k + 1], "integral index");
      if (idx[k] < 0 || idx[k] > norb) {
        throw ParseError("FCIDUMP body line " + std::to_string(line_no) +
                         ": index " + std::to_string(idx[k]) +
                         " outside [1, NORB]");
      }
    }
    const auto [i, j, k, l] = std::tuple(idx[0], idx[1], idx[2], idx[3]);
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      table.set_core_energy(value);
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      // orbital energy record; not part of the Hamiltonian
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      table.set_h1(i - 1, j - 1, value);
    } else if (i > 0 && j > 0 && k > 0 && l > 0) {
      table.set_eri(i - 1, j - 1, k - 1, l - 1, value);
    } else {
      throw ParseError("FCIDUMP body line " + std::to_string(line_no) +
                       ": index pattern not recognised");
    }
  }
  return table;
}

IntegralTable load_fcidump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open FCIDUMP '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_fcidump(ss.str());
}

std::string write_fcidump(const IntegralTable& t) {
  std::ostringstream out;
  const std::size_t n = t.n_spatial();
  out << " &FCI NORB=" << n << ",NELEC=" << t.n_electrons() << ",MS2=0,\n";
  out << "  ORBSYM=";
  for (std::size_t p = 0; p < n; ++p) {
    out << t.orbsym()[p] << (p + 1 < n ? "," : "");
  }
  out << "\n  ISYM=1,\n &END\n";
  char buf[64];
  auto emit = [&](double v, std::size_t i, std::size_t j, std::size_t k,
                  std::size_t l) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << ' ' << buf << ' ' << i << ' ' << j << ' ' << k << ' ' << l << '\n';
  };
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q <= p; ++q) {
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          const double v = t.eri(p, q, r, s);
          if (v != 0.0) emit(v, p + 1, q + 1, r + 1, s + 1);
        }
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q <= p; ++q) {
      if (t.h1(p, q) != 0.0) emit(t.h1(p, q), p + 1, q + 1, 0, 0);
    }
  }
  emit(t.core_energy(), 0, 0, 0, 0);
  return out.str();
}

ReferenceDeterminant reference_determinant(const IntegralTable& table) {
  ReferenceDeterminant ref;
  for (std::size_t i = 0; i < table.n_occupied(); ++i) {
    ref.occupied_spatial.push_back(i);
    // alpha and beta electron in the same orbital
    ref.irrep *= table.orbital_irrep(i);
    ref.irrep *= table.orbital_irrep(i);
  }
  return ref;
}

double hf_energy(const IntegralTable& t) {
  const std::size_t nocc = t.n_occupied();
  double e = t.core_energy();
  for (std::size_t i = 0; i < nocc; ++i) e += 2.0 * t.h1(i, i);
  for (std::size_t i = 0; i < nocc; ++i) {
    for (std::size_t j = 0; j < nocc; ++j) {
      e += 2.0 * t.eri(i, i, j, j) - t.eri(i, j, j, i);
    }
  }
  return e;
}

}  // namespace symucc
