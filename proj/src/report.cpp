#include "cml/analysis.hpp"

namespace cml {

bool EquilibriumReport::all_bounds_pass() const {
    for (const auto& c : bound_checks)
        if (!c.pass) return false;
    return true;
}

Interval equilibrium_load_factor(std::size_t m, unsigned d) {
    Interval root_m = Interval(Rational(static_cast<long>(m))).root(d + 1);
    return root_m * (Interval(Rational(d + 1)) / Interval::ln2());
}

Interval minimizer_load_factor(std::size_t m, unsigned d) {
    Rational base(Integer(static_cast<long>(d + 1) * static_cast<long>(m)), Integer(d));
    base.canonicalize();
    return Interval(base).root(d + 1);
}

Interval poa_factor(std::size_t m, unsigned d) {
    return Interval(Rational(d)).root(d) * (equilibrium_load_factor(m, d) + Interval(Rational(1)));
}

Interval pos_factor(std::size_t m, unsigned d) {
    return Interval(Rational(d)).root(d) * (minimizer_load_factor(m, d) + Interval(Rational(1)));
}

namespace {

Rational max_ct_power(const Mechanism& mech, const Instance& inst, const Assignment& asg, const LoadVector& lv) {
    if (mech.is_baseline()) return makespan(lv);
    Rational best = 0;
    for (JobIndex u = 0; u < inst.jobs(); ++u) {
        Rational p = deviation_key(mech, inst, asg, u, asg.machine_of[u]) / inst.min_weight(u);
        if (p > best) best = p;
    }
    return best;
}

BoundCheck make_check(std::string name, std::string scope, const Interval& observed, const Interval& bound,
                      int digits) {
    return BoundCheck{std::move(name), std::move(scope), bound.to_decimal(digits), observed.to_decimal(digits),
                      observed.certainly_le(bound)};
}

}  // namespace

EquilibriumReport poa_pos_report(const Mechanism& mech, const Instance& inst, std::uint64_t cap, int digits) {
    EquilibriumReport report;
    report.mechanism = mechanism_descriptor(mech);
    report.mechanism_name = mech.name();
    report.degree = mech.root_degree();
    report.opt = optimal_makespan(inst, cap);
    const Interval opt(report.opt.value);
    const Rational opt_power = pow(report.opt.value, report.degree);

    for (auto& asg : enumerate_equilibria(mech, inst, cap)) {
        EquilibriumEntry e;
        e.loads = load_vector(inst, asg);
        e.makespan = makespan(e.loads);
        e.phi = mech.is_baseline() ? Rational(0) : potential(mech.coefficients(), inst, asg).value;
        e.max_ct_power = max_ct_power(mech, inst, asg, e.loads);
        e.max_ct = root_decimal(e.max_ct_power, report.degree, digits);
        e.ratio = Interval(e.max_ct_power).root(report.degree) / opt;
        e.ratio_text = root_decimal(e.max_ct_power / opt_power, report.degree, digits);
        e.assignment = std::move(asg);
        report.equilibria.push_back(std::move(e));
    }

    const auto& eq = report.equilibria;
    for (std::size_t i = 1; i < eq.size(); ++i) {
        if (eq[i].max_ct_power > eq[report.poa_index].max_ct_power) report.poa_index = i;
        if (eq[i].max_ct_power < eq[report.pos_index].max_ct_power) report.pos_index = i;
        if (eq[i].phi < eq[report.phi_min_index].phi) report.phi_min_index = i;
    }
    if (!eq.empty()) {
        report.poa = eq[report.poa_index].ratio;
        report.pos = eq[report.pos_index].ratio;
        report.poa_ratio = eq[report.poa_index].ratio_text;
        report.pos_ratio = eq[report.pos_index].ratio_text;
    } else {
        report.poa_ratio = report.pos_ratio = "n/a";
    }
    report.bound_checks = verify_load_bounds(inst, report, digits);
    return report;
}

std::vector<BoundCheck> verify_load_bounds(const Instance& inst, const EquilibriumReport& report, int digits) {
    std::vector<BoundCheck> checks;
    // The load and completion-time guarantees are proven for DCOORD only.
    if (report.mechanism_name != "dcoord" || report.equilibria.empty()) return checks;

    const std::size_t m = inst.machines();
    const unsigned d = report.degree;
    const Interval opt(report.opt.value);
    const Interval load_bound = equilibrium_load_factor(m, d) * opt;
    const Interval phi_min_bound = minimizer_load_factor(m, d) * opt;
    const Interval poa_bound = poa_factor(m, d) * opt;
    const Interval pos_bound = pos_factor(m, d) * opt;
    const Rational opt_power = pow(report.opt.value, d);

    for (std::size_t i = 0; i < report.equilibria.size(); ++i) {
        const auto& e = report.equilibria[i];
        const std::string scope = "equilibrium " + std::to_string(i);
        for (MachineIndex j = 0; j < m; ++j)
            checks.push_back(make_check("equilibrium-load", scope + ", machine " + std::to_string(j),
                                        Interval(e.loads.loads[j]), load_bound, digits));
        checks.push_back(make_check("poa-completion-time", scope, Interval(e.max_ct_power).root(d), poa_bound, digits));
        checks.push_back(BoundCheck{"ratio-at-least-one", scope, "1", e.ratio_text, e.max_ct_power >= opt_power});
    }

    const auto& best = report.equilibria[report.phi_min_index];
    const std::string scope = "potential minimizer (equilibrium " + std::to_string(report.phi_min_index) + ")";
    for (MachineIndex j = 0; j < m; ++j)
        checks.push_back(make_check("potential-minimizer-load", scope + ", machine " + std::to_string(j),
                                    Interval(best.loads.loads[j]), phi_min_bound, digits));
    checks.push_back(make_check("pos-completion-time", scope, Interval(best.max_ct_power).root(d), pos_bound, digits));
    return checks;
}

}  // namespace cml
