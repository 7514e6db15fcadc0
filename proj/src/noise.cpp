#include "syndromest/noise.hpp"

#include <cmath>
#include <unordered_set>

#include "syndromest/errors.hpp"

namespace syndromest {

DecomposableModel::DecomposableModel(std::size_t n, std::size_t l, std::vector<ErrorSet> sets,
                                     std::vector<std::vector<double>> rates)
    : n_(n), l_(l), sets_(std::move(sets)), rates_(std::move(rates)) {
  if (sets_.size() != rates_.size())
    throw std::invalid_argument("one rate vector per error set required");

  std::unordered_set<ErrorEvent, ErrorEventHash> seen;
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    const auto& set = sets_[i].elements;
    if (set.empty()) throw std::invalid_argument("error set must be nonempty");
    if (rates_[i].size() != set.size())
      throw std::invalid_argument("rate vector length must match the error set");
    double total = 0.0;
    for (std::size_t k = 0; k < set.size(); ++k) {
      const ErrorEvent& e = set[k];
      if (e.data.num_qubits() != n_ || e.flips.size() != l_)
        throw std::invalid_argument("error event dimensions do not match the model");
      if (e.is_identity()) throw std::invalid_argument("identity is not an elementary error");
      // Disjointness across sets is required; silently accepting overlap
      // would break the rank argument of the identifiability results.
      if (!seen.insert(e).second)
        throw std::invalid_argument("error sets must be disjoint (duplicate elementary error)");
      const double r = rates_[i][k];
      if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("rates must lie in [0, 1]");
      total += r;
    }
    if (total > 1.0 + 1e-12) throw std::invalid_argument("rates of one set exceed total mass 1");
  }
}

double DecomposableModel::identity_rate(std::size_t i) const {
  double total = 0.0;
  for (double r : rates_[i]) total += r;
  return 1.0 - total;
}

std::size_t DecomposableModel::num_parameters() const {
  std::size_t k = 0;
  for (const auto& s : sets_) k += s.elements.size();
  return k;
}

void DecomposableModel::set_rate(std::size_t i, std::size_t k, double value) {
  if (!(value >= 0.0 && value <= 1.0)) throw std::invalid_argument("rate must lie in [0, 1]");
  rates_[i][k] = value;
  double total = 0.0;
  for (double r : rates_[i]) total += r;
  if (total > 1.0 + 1e-12) throw std::invalid_argument("rates of one set exceed total mass 1");
}

SingleQubitPauliRates depolarizing_rates(std::size_t n, double p) {
  if (!(p >= 0.0 && 3.0 * p <= 1.0))
    throw std::invalid_argument("depolarizing rate must satisfy 0 <= 3p <= 1");
  return SingleQubitPauliRates(n, QubitRates{p, p, p});
}

DecomposableModel model_from_rates(const SingleQubitPauliRates& rates, std::size_t l,
                                   std::span<const double> flip_rates) {
  const std::size_t n = rates.size();
  if (!flip_rates.empty() && flip_rates.size() != l)
    throw std::invalid_argument("flip rate count must equal l");
  std::vector<ErrorSet> sets;
  std::vector<std::vector<double>> theta;
  for (std::size_t q = 0; q < n; ++q) {
    ErrorSet s;
    for (Pauli e : {Pauli::X, Pauli::Y, Pauli::Z})
      s.elements.emplace_back(PauliString::single(n, q, e), Syndrome(l));
    sets.push_back(std::move(s));
    theta.push_back({rates[q].x, rates[q].y, rates[q].z});
  }
  for (std::size_t b = 0; b < flip_rates.size(); ++b) {
    ErrorSet s;
    Syndrome f(l);
    f.set_bit(b, true);
    s.elements.emplace_back(PauliString(n), std::move(f));
    sets.push_back(std::move(s));
    theta.push_back({flip_rates[b]});
  }
  return DecomposableModel(n, l, std::move(sets), std::move(theta));
}

double event_probability(const DecomposableModel& model, std::span<const int> assignment) {
  if (assignment.size() != model.num_sets())
    throw std::invalid_argument("assignment length must equal the number of sets");
  double p = 1.0;
  for (std::size_t i = 0; i < model.num_sets(); ++i) {
    const int choice = assignment[i];
    if (choice < 0) {
      p *= model.identity_rate(i);
    } else {
      if (static_cast<std::size_t>(choice) >= model.set(i).elements.size())
        throw std::invalid_argument("assignment choice out of range");
      p *= model.rates(i)[choice];
    }
  }
  return p;
}

ErrorEvent sample(const DecomposableModel& model, Rng& rng) {
  ErrorEvent total(model.num_qubits(), model.num_flip_bits());
  for (std::size_t i = 0; i < model.num_sets(); ++i) {
    const int choice = rng.pick_or_none(model.rates(i));
    if (choice >= 0) total *= model.set(i).elements[choice];
  }
  return total;
}

namespace {

// Iterates all assignments (choice per set, -1 = identity) with their
// probabilities. Budget-guarded on the product of (|N_i| + 1).
template <typename Visitor>
void enumerate_rec(const DecomposableModel& model, std::size_t level, double prefix,
                   std::vector<int>& choice, Visitor& visit) {
  if (level == model.num_sets()) {
    visit(std::span<const int>(choice), prefix);
    return;
  }
  choice[level] = -1;
  enumerate_rec(model, level + 1, prefix * model.identity_rate(level), choice, visit);
  const auto rates = model.rates(level);
  for (std::size_t k = 0; k < rates.size(); ++k) {
    choice[level] = static_cast<int>(k);
    enumerate_rec(model, level + 1, prefix * rates[k], choice, visit);
  }
  choice[level] = -1;
}

template <typename Visitor>
void enumerate_assignments(const DecomposableModel& model, Visitor&& visit) {
  double budget = 1.0;
  for (std::size_t i = 0; i < model.num_sets(); ++i)
    budget *= static_cast<double>(model.set(i).elements.size() + 1);
  if (budget > double(1 << 24))
    throw BudgetError("assignment enumeration refused", budget);

  std::vector<int> choice(model.num_sets(), -1);
  enumerate_rec(model, 0, 1.0, choice, visit);
}

}  // namespace

std::unordered_map<ErrorEvent, double, ErrorEventHash> total_error_distribution(
    const DecomposableModel& model) {
  std::unordered_map<ErrorEvent, double, ErrorEventHash> dist;
  enumerate_assignments(model, [&](std::span<const int> choice, double p) {
    ErrorEvent total(model.num_qubits(), model.num_flip_bits());
    for (std::size_t i = 0; i < choice.size(); ++i)
      if (choice[i] >= 0) total *= model.set(i).elements[choice[i]];
    dist[total] += p;
  });
  return dist;
}

std::vector<double> syndrome_distribution(const DecomposableModel& model,
                                          const StabilizerCode& code) {
  if (code.num_qubits() != model.num_qubits())
    throw std::invalid_argument("code and model qubit counts differ");
  const std::size_t l = code.num_generators();
  if (model.num_flip_bits() != 0 && model.num_flip_bits() != l)
    throw std::invalid_argument("model flip bits must match the generator count");
  if (l > 24) throw BudgetError("syndrome enumeration refused", std::pow(2.0, double(l)));

  // Syndrome contribution of each elementary error, so assignments reduce to
  // XOR accumulation.
  std::vector<std::vector<std::uint64_t>> contrib(model.num_sets());
  for (std::size_t i = 0; i < model.num_sets(); ++i)
    for (const ErrorEvent& e : model.set(i).elements) {
      Syndrome s = code.syndrome(e.data);
      if (model.num_flip_bits() == l) s ^= e.flips;
      contrib[i].push_back(s.to_uint());
    }

  std::vector<double> dist(std::size_t{1} << l, 0.0);
  enumerate_assignments(model, [&](std::span<const int> choice, double p) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < choice.size(); ++i)
      if (choice[i] >= 0) s ^= contrib[i][choice[i]];
    dist[s] += p;
  });
  return dist;
}

}  // namespace syndromest
