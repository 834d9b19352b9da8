#include "gspace/catalog.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace gspace {

namespace {

using bigint = boost::multiprecision::cpp_int;

std::vector<int> compose_perms(const std::vector<int>& f,
                               const std::vector<int>& g) {
  // (f*g)(i) = f(g(i))
  std::vector<int> r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    r[i] = f[static_cast<std::size_t>(g[i])];
  }
  return r;
}

std::vector<int> invert_perm(const std::vector<int>& f) {
  std::vector<int> r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    r[static_cast<std::size_t>(f[i])] = static_cast<int>(i);
  }
  return r;
}

MarkedGroup permutation_group(std::string name,
                              std::vector<std::vector<int>> gens) {
  auto inv = std::make_shared<std::vector<std::vector<int>>>();
  for (const auto& g : gens) inv->push_back(invert_perm(g));
  auto fwd = std::make_shared<std::vector<std::vector<int>>>(std::move(gens));
  int rank = static_cast<int>(fwd->size());
  std::size_t deg = (*fwd)[0].size();
  return MarkedGroup(rank, std::move(name), [fwd, inv, deg](const Word& w) {
    std::vector<int> acc(deg);
    std::iota(acc.begin(), acc.end(), 0);
    for (Letter l : w.letters()) {
      const auto& p = l > 0 ? (*fwd)[static_cast<std::size_t>(l - 1)]
                            : (*inv)[static_cast<std::size_t>(-l - 1)];
      acc = compose_perms(acc, p);
    }
    for (std::size_t i = 0; i < deg; ++i) {
      if (acc[i] != static_cast<int>(i)) return false;
    }
    return true;
  });
}

}  // namespace

namespace {

// Shortlex-least word with the given exponent vector: minimal length, then
// letters in alphabet order (positives before inverses).
Word abelian_normal_form(const std::vector<long>& exps, int rank) {
  std::vector<Letter> out;
  for (int i = 1; i <= rank; ++i) {
    long e = exps[static_cast<std::size_t>(i - 1)];
    for (long j = 0; j < e; ++j) out.push_back(static_cast<Letter>(i));
  }
  for (int i = 1; i <= rank; ++i) {
    long e = exps[static_cast<std::size_t>(i - 1)];
    for (long j = 0; j < -e; ++j) out.push_back(static_cast<Letter>(-i));
  }
  return Word::reduce(std::span<const Letter>(out), rank);
}

}  // namespace

MarkedGroup trivial_group() {
  return MarkedGroup(1, "trivial", [](const Word&) { return true; })
      .with_normal_form([](const Word& w) { return Word(w.rank()); });
}

MarkedGroup integers() {
  return MarkedGroup(1, "Z", [](const Word& w) { return w.empty(); })
      .with_normal_form([](const Word& w) { return w; });
}

MarkedGroup cyclic(long n) {
  if (n < 1) throw SpecError("Z/n requires n >= 1");
  return MarkedGroup(1, "Z/" + std::to_string(n),
                     [n](const Word& w) { return w.exponent_sum(1) % n == 0; })
      .with_normal_form([n](const Word& w) {
        long e = ((w.exponent_sum(1) % n) + n) % n;
        if (2 * e > n) e -= n;  // ties at n/2 stay positive
        return generator_power(1, e, 1);
      });
}

MarkedGroup free_abelian(int k) {
  if (k < 1) throw SpecError("Z^k requires k >= 1");
  return MarkedGroup(k, "Z^" + std::to_string(k),
                     [k](const Word& w) {
                       for (int i = 1; i <= k; ++i) {
                         if (w.exponent_sum(i) != 0) return false;
                       }
                       return true;
                     })
      .with_normal_form([k](const Word& w) {
        std::vector<long> exps;
        for (int i = 1; i <= k; ++i) exps.push_back(w.exponent_sum(i));
        return abelian_normal_form(exps, k);
      });
}

MarkedGroup free_group(int k) {
  if (k < 1) throw SpecError("F k requires k >= 1");
  return MarkedGroup(k, "F " + std::to_string(k),
                     [](const Word& w) { return w.empty(); })
      .with_normal_form([](const Word& w) { return w; });
}

MarkedGroup baumslag_solitar(long m) {
  if (m < 1) throw SpecError("BS(1,m) requires m >= 1");
  // Faithful affine action on Z[1/m]: a is x+1, b is m*x. An element is
  // (t, p/m^d) acting as x -> m^t x + p/m^d; trivial iff t = 0 and p = 0.
  return MarkedGroup(
      2, "BS(1," + std::to_string(m) + ")", [m](const Word& w) {
        long t = 0;
        bigint num = 0;
        long den = 0;  // denominator exponent: num / m^den
        const bigint M = m;
        for (Letter l : w.letters()) {
          // compose acc ∘ phi(l): (t1,q1)∘(t2,q2) = (t1+t2, m^t1 q2 + q1)
          long t2 = 0;
          bigint q2num = 0;
          long q2den = 0;
          switch (l) {
            case 1: q2num = 1; break;                 // a
            case -1: q2num = -1; break;               // a⁻¹
            case 2: t2 = 1; break;                    // b
            case -2: t2 = -1; break;                  // b⁻¹
            default: throw SpecError("BS oracle: rank-2 words only");
          }
          // m^t1 * q2 with t1 possibly negative: scale into num/den form.
          bigint scaled = q2num;
          long scaled_den = q2den;
          if (t >= 0) {
            for (long i = 0; i < t; ++i) scaled *= M;
          } else {
            scaled_den += -t;
          }
          // acc.q = scaled/m^scaled_den + num/m^den
          long common = std::max(scaled_den, den);
          bigint a = scaled, b = num;
          for (long i = scaled_den; i < common; ++i) a *= M;
          for (long i = den; i < common; ++i) b *= M;
          num = a + b;
          den = common;
          t += t2;
          while (den > 0 && num % M == 0) {
            num /= M;
            --den;
          }
          if (num == 0) den = 0;
        }
        return t == 0 && num == 0;
      });
}

MarkedGroup dihedral(long n) {
  if (n < 1) throw SpecError("D n requires n >= 1");
  // (rotation r, flip s): elements (t, f) with multiplication
  // (t1,f1)(t2,f2) = (t1 + (-1)^{f1} t2, f1 xor f2).
  return MarkedGroup(2, "D " + std::to_string(n), [n](const Word& w) {
    long t = 0;
    int f = 0;
    for (Letter l : w.letters()) {
      long t2 = 0;
      int f2 = 0;
      switch (l) {
        case 1: t2 = 1; break;
        case -1: t2 = -1; break;
        case 2: f2 = 1; break;
        case -2: f2 = 1; break;
        default: throw SpecError("D oracle: rank-2 words only");
      }
      t = (t + (f ? -t2 : t2)) % n;
      f ^= f2;
    }
    return t % n == 0 && f == 0;
  });
}

MarkedGroup symmetric(int n) {
  if (n < 2) throw SpecError("S n requires n >= 2");
  std::vector<int> tr(static_cast<std::size_t>(n));
  std::iota(tr.begin(), tr.end(), 0);
  std::swap(tr[0], tr[1]);
  std::vector<int> cyc(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cyc[static_cast<std::size_t>(i)] = (i + 1) % n;
  return permutation_group("S " + std::to_string(n), {tr, cyc});
}

MarkedGroup alternating(int n) {
  if (n < 3) throw SpecError("A n requires n >= 3");
  std::vector<int> three(static_cast<std::size_t>(n));
  std::iota(three.begin(), three.end(), 0);
  three[0] = 1;
  three[1] = 2;
  three[2] = 0;
  std::vector<int> cyc(static_cast<std::size_t>(n));
  std::iota(cyc.begin(), cyc.end(), 0);
  if (n % 2 == 1) {
    for (int i = 0; i < n; ++i) cyc[static_cast<std::size_t>(i)] = (i + 1) % n;
  } else {
    // (2 3 ... n): an (n-1)-cycle fixing 1, even when n is even
    for (int i = 1; i < n; ++i) {
      cyc[static_cast<std::size_t>(i)] = i % (n - 1) + 1;
    }
  }
  return permutation_group("A " + std::to_string(n), {three, cyc});
}

MarkedGroup heisenberg() {
  // Upper unitriangular 3x3 integer matrices: a adds to the (1,2) entry, b
  // to the (2,3) entry; coordinates (x, y, z) with z the corner entry.
  return MarkedGroup(2, "Heis", [](const Word& w) {
    long long x = 0, y = 0, z = 0;
    for (Letter l : w.letters()) {
      long long dx = 0, dy = 0;
      switch (l) {
        case 1: dx = 1; break;
        case -1: dx = -1; break;
        case 2: dy = 1; break;
        case -2: dy = -1; break;
        default: throw SpecError("Heis oracle: rank-2 words only");
      }
      // right multiplication by the elementary matrix
      z += x * dy;
      x += dx;
      y += dy;
    }
    return x == 0 && y == 0 && z == 0;
  });
}

MarkedGroup lamplighter() {
  // (finite lamp set, shift): (A,s)(B,t) = (A xor (B+s), s+t).
  return MarkedGroup(2, "Lamp", [](const Word& w) {
    std::set<long> lamps;
    long shift = 0;
    auto toggle = [&](long pos) {
      auto it = lamps.find(pos);
      if (it == lamps.end()) {
        lamps.insert(pos);
      } else {
        lamps.erase(it);
      }
    };
    for (Letter l : w.letters()) {
      switch (l) {
        case 1:
        case -1: toggle(shift); break;  // lamp generator is an involution
        case 2: ++shift; break;
        case -2: --shift; break;
        default: throw SpecError("Lamp oracle: rank-2 words only");
      }
    }
    return lamps.empty() && shift == 0;
  });
}

MarkedGroup catalog(const std::string& name, const std::vector<long>& params) {
  auto want = [&](std::size_t n) {
    if (params.size() != n) {
      throw SpecError("catalog '" + name + "': expected " + std::to_string(n) +
                      " parameter(s)");
    }
  };
  if (name == "trivial") { want(0); return trivial_group(); }
  if (name == "Z") { want(0); return integers(); }
  if (name == "Z^k") { want(1); return free_abelian(static_cast<int>(params[0])); }
  if (name == "Z/n") {
    want(1);
    return params[0] == 1 ? trivial_group() : cyclic(params[0]);
  }
  if (name == "F") { want(1); return free_group(static_cast<int>(params[0])); }
  if (name == "BS") { want(1); return baumslag_solitar(params[0]); }
  if (name == "D") { want(1); return dihedral(params[0]); }
  if (name == "S") { want(1); return symmetric(static_cast<int>(params[0])); }
  if (name == "A") { want(1); return alternating(static_cast<int>(params[0])); }
  if (name == "Heis") { want(0); return heisenberg(); }
  if (name == "Lamp") { want(0); return lamplighter(); }
  throw SpecError("unknown catalog group '" + name + "'");
}

std::vector<CatalogEntry> catalog_instances() {
  std::vector<CatalogEntry> out;
  auto add = [&](MarkedGroup g, bool ab, int nil, long order) {
    out.push_back({std::move(g), ab, nil, order});
  };
  add(trivial_group(), true, 0, 1);
  add(integers(), true, 1, -1);
  add(free_abelian(2), true, 1, -1);
  add(free_abelian(3), true, 1, -1);
  add(cyclic(2), true, 1, 2);
  add(cyclic(3), true, 1, 3);
  add(cyclic(4), true, 1, 4);
  add(cyclic(5), true, 1, 5);
  add(cyclic(6), true, 1, 6);
  add(cyclic(10), true, 1, 10);
  add(cyclic(12), true, 1, 12);
  add(free_group(2), false, -1, -1);
  add(free_group(3), false, -1, -1);
  add(baumslag_solitar(2), false, -1, -1);
  add(baumslag_solitar(5), false, -1, -1);
  add(dihedral(3), false, -1, 6);
  add(dihedral(4), false, 2, 8);
  add(dihedral(5), false, -1, 10);
  add(dihedral(6), false, -1, 12);
  add(symmetric(3), false, -1, 6);
  add(symmetric(4), false, -1, 24);
  add(symmetric(5), false, -1, 120);
  add(alternating(4), false, -1, 12);
  add(alternating(5), false, -1, 60);
  add(heisenberg(), false, 2, -1);
  add(lamplighter(), false, -1, -1);
  add(direct_product(integers(), cyclic(2)), true, 1, -1);
  add(free_product(cyclic(2), cyclic(2)), false, -1, -1);
  return out;
}

// --- sequences ----------------------------------------------------------------

GroupSequence cyclic_sequence() {
  GroupSequence s;
  s.rank = 1;
  s.name = "cyclicseq";
  s.at = [](std::uint64_t n) {
    return n == 0 ? trivial_group() : cyclic(static_cast<long>(n));
  };
  // d(Z/n, Z) = 2^{-(2n-1)}, so index m+1 is more than enough for 2^-m.
  s.regulator = [](std::uint64_t m) { return m + 1; };
  return s;
}

GroupSequence z_markings_sequence() {
  GroupSequence s;
  s.rank = 2;
  s.name = "zmarkseq";
  MarkedGroup z = integers();
  s.at = [z](std::uint64_t n) {
    long k = static_cast<long>(n) + 1;
    return subgroup_marking(z, {generator_power(1, 1, 1),
                                generator_power(1, k, 1)});
  };
  // The marking (1,k) first disagrees with Z^2 on a word of length k+1, so
  // it suffices that k exceed the length of the (m-1)-st shortlex word.
  s.regulator = [](std::uint64_t m) {
    int len = 0;
    std::uint64_t total = 1;
    while (total < m) {
      ++len;
      total += reduced_word_count(2, len);
    }
    return static_cast<std::uint64_t>(len) + 1;
  };
  return s;
}

GroupSequence constant_sequence(const MarkedGroup& g) {
  GroupSequence s;
  s.rank = g.rank();
  s.name = "const(" + g.name() + ")";
  s.at = [g](std::uint64_t) { return g; };
  s.regulator = [](std::uint64_t) { return 0; };
  return s;
}

GroupSequence named_sequence(const std::string& name) {
  if (name == "cyclic" || name == "cyclicseq") return cyclic_sequence();
  if (name == "zmark" || name == "zmarkseq") return z_markings_sequence();
  throw SpecError("unknown sequence '" + name + "'");
}

}  // namespace gspace
