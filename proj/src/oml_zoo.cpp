#include <string>

#include "ncg/errors.hpp"
#include "ncg/oml.hpp"

namespace ncg::oml {

namespace {

std::string pair_name(int k, int pairs) {
  if (pairs <= 26) return std::string(1, static_cast<char>('a' + k));
  return "a" + std::to_string(k);
}

}  // namespace

FiniteOml boolean_lattice(int atoms) {
  if (atoms < 0 || atoms > 8) throw StructuralError("boolean_lattice supports 0..8 atoms");
  const int n = 1 << atoms;
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  std::vector<Element> ortho(n);
  std::vector<std::string> labels(n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) leq[p][q] = (p & ~q) == 0;
    ortho[p] = (n - 1) & ~p;
    if (p == 0) {
      labels[p] = "0";
    } else if (p == n - 1) {
      labels[p] = "1";
    } else {
      for (int b = 0; b < atoms; ++b)
        if (p >> b & 1) labels[p] += static_cast<char>('a' + b);
    }
  }
  if (atoms == 0) labels[0] = "0";
  return FiniteOml(std::move(leq), std::move(ortho), std::move(labels));
}

FiniteOml mo_lattice(int pairs) {
  if (pairs < 1 || pairs > 64) throw StructuralError("mo_lattice supports 1..64 pairs");
  const int n = 2 * pairs + 2;
  const int top = n - 1;
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  std::vector<Element> ortho(n);
  std::vector<std::string> labels(n);
  labels[0] = "0";
  labels[top] = "1";
  ortho[0] = top;
  ortho[top] = 0;
  for (int k = 0; k < pairs; ++k) {
    const int a = 1 + 2 * k;
    labels[a] = pair_name(k, pairs);
    labels[a + 1] = pair_name(k, pairs) + "'";
    ortho[a] = a + 1;
    ortho[a + 1] = a;
  }
  for (int p = 0; p < n; ++p) {
    leq[0][p] = true;
    leq[p][top] = true;
    leq[p][p] = true;
  }
  return FiniteOml(std::move(leq), std::move(ortho), std::move(labels));
}

FiniteOml chain_lattice(int length) {
  if (length < 1) throw StructuralError("chain length must be positive");
  std::vector<std::vector<bool>> leq(length, std::vector<bool>(length));
  std::vector<Element> ortho(length);
  std::vector<std::string> labels(length);
  for (int p = 0; p < length; ++p) {
    for (int q = 0; q < length; ++q) leq[p][q] = p <= q;
    ortho[p] = length - 1 - p;
    labels[p] = p == 0 ? "0" : (p == length - 1 ? "1" : "c" + std::to_string(p));
  }
  return FiniteOml(std::move(leq), std::move(ortho), std::move(labels));
}

FiniteOml horizontal_sum(const std::vector<FiniteOml>& summands) {
  if (summands.empty()) throw StructuralError("horizontal sum needs at least one summand");
  // element 0 is the shared bottom, the last element the shared top
  std::vector<std::vector<Element>> position;
  std::vector<std::string> labels{"0"};
  for (std::size_t s = 0; s < summands.size(); ++s) {
    const auto& L = summands[s];
    if (L.bottom() == kNone || L.top() == kNone) throw StructuralError("summand is not bounded");
    std::vector<Element> pos(static_cast<std::size_t>(L.size()), kNone);
    for (int p = 0; p < L.size(); ++p) {
      if (p == L.bottom() || p == L.top()) continue;
      pos[p] = static_cast<Element>(labels.size());
      labels.push_back(std::to_string(s) + ":" + L.label(p));
    }
    position.push_back(std::move(pos));
  }
  const int top = static_cast<int>(labels.size());
  labels.push_back("1");
  const int n = top + 1;
  for (auto& pos : position) {
    for (std::size_t p = 0; p < pos.size(); ++p) {
      if (pos[p] != kNone) continue;
      pos[p] = static_cast<int>(p) == summands[&pos - position.data()].bottom() ? 0 : top;
    }
  }

  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  std::vector<Element> ortho(n);
  for (int p = 0; p < n; ++p) {
    leq[0][p] = true;
    leq[p][top] = true;
  }
  ortho[0] = top;
  ortho[top] = 0;
  for (std::size_t s = 0; s < summands.size(); ++s) {
    const auto& L = summands[s];
    const auto& pos = position[s];
    for (int p = 0; p < L.size(); ++p) {
      for (int q = 0; q < L.size(); ++q)
        if (L.leq(p, q)) leq[pos[p]][pos[q]] = true;
      ortho[pos[p]] = pos[L.ortho(p)];
    }
  }
  return FiniteOml(std::move(leq), std::move(ortho), std::move(labels));
}

}  // namespace ncg::oml
