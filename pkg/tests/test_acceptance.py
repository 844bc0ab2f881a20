"""Acceptance criteria 1-10.

Each test prints one ``PASS criterion N`` or ``FAIL criterion N`` line
(run with ``-s`` to see them) and then asserts.
"""

import math

import numpy as np
from resdil import channels as ch
from resdil import dilution, qec, rates
from resdil import functionals as fn
from resdil import states as st
from resdil.cli import S2_PROBS, S3_PROBS
from resdil.errors import Degenerate
from resdil.sweep import grid, sweep


def verdict(n, checks):
    """``checks`` maps a short description to a bool; prints one line per criterion."""
    failed = [name for name, ok in checks.items() if not ok]
    line = f"{'FAIL' if failed else 'PASS'} criterion {n}"
    print(line + (f": {', '.join(failed)}" if failed else ""))
    assert not failed, line


def test_criterion_1_entanglement_fig2():
    lam = 0.5
    oracle = 1 - fn.binary_entropy((1 + math.sqrt(0.5)) / 2)
    alphas = np.linspace(0, math.pi / 4, 102)[1:-1]
    pairs = [dilution.entanglement_advantage(lam, a) for a in alphas]
    lhs = np.array([l for l, _ in pairs])
    rhs = np.array([r for _, r in pairs])
    low = dilution.entanglement_advantage(lam, 1e-3)
    verdict(1, {
        "rhs matches oracle": np.all(np.abs(rhs - oracle) < 1e-9),
        "lhs > rhs on grid": np.all(lhs > rhs),
        "lhs nonincreasing": np.all(np.diff(lhs) <= 1e-12),
        "advantage at 1e-3": low[0] - low[1] >= 0.05,
    })


def test_criterion_2_closed_form_vs_simulation():
    worst = 0.0
    for a in np.linspace(0, math.pi / 2, 20):
        for lam in np.linspace(0, 1, 20):
            sim = rates.hashing_rate(rates.phase_damped_state(a, lam))
            worst = max(worst, abs(rates.ed_phase_damped_pure(a, lam) - sim))
    verdict(2, {f"max deviation {worst:.1e} <= 1e-9": worst <= 1e-9})


def test_criterion_3_coherence_fig3():
    gamma = 0.9
    alphas = grid(0, math.pi / 2, 400, open_lo=True)
    res = sweep(lambda a: dilution.coherence_advantage(gamma, a, "pure"), alphas)
    no_dilution = res.points[0].rhs
    limit = dilution.coherence_mixed_limit(gamma)
    verdict(3, {
        "no-dilution rate 0.13": abs(no_dilution - 0.13) <= 0.005,
        "pure maximum 0.15": abs(res.max_rate - 0.15) <= 0.01,
        "pure argmax 0.34": abs(res.argmax_param - 0.34) <= 0.02,
        "mixed limit 0.16": abs(limit - 0.16) <= 0.01,
    })


def test_criterion_4_thermal_fig4():
    T, p = 0.3, 0.9
    res = dilution.thermal_sweep(T, p, n=200)
    gibbs_excited = st.gibbs_populations([0.0, 1.0], T)[1]
    verdict(4, {
        "argmax q 0.85": abs(res.argmax_param - 0.85) <= 0.01,
        "Gibbs excited weight 0.03": abs(gibbs_excited - 0.03) <= 0.005,
    })


def test_criterion_5_correlated_noise():
    checks = {}
    for n, probs in ((2, S2_PROBS), (3, S3_PROBS)):
        alphas = grid(0, math.pi / 4, 40, open_lo=True)
        res = sweep(lambda a: dilution.correlated_noise_advantage(n, probs, a), alphas)
        lhs = np.array([pt.lhs for pt in res.points])
        rhs = res.points[0].rhs
        sim = rates.ed_correlated_noise(n, probs, method="simulate")
        checks[f"n={n} dilution helps at small alpha"] = lhs[0] > rhs
        checks[f"n={n} maximum at smallest alpha"] = int(np.argmax(lhs)) == 0
        checks[f"n={n} singlet closed form vs simulation"] = (
            abs(rhs - sim) < 1e-9 and abs(n - fn.shannon_entropy(probs) - sim) < 1e-9)
    verdict(5, checks)


def test_criterion_6_qec_phase_flip():
    worst = max(float(np.max(np.abs(qec.phase_flip_round(ch.phase_flip(p)).mat - qec.decoded_closed_form(p))))
                for p in (0.0, 0.05, 0.1, 0.25, 0.5))
    ps = np.linspace(0, 0.5, 52)[1:-1]
    verdict(6, {
        f"decoded closed form (max {worst:.1e})": worst <= 1e-10,
        "qec >= dilution on 50 points": all(qec.ed_qec_phase_flip(p) >= qec.ed_dil_phase_flip(p) for p in ps),
    })


def test_criterion_7_theta_oracle():
    r = np.random.default_rng(7)
    phi_plus = np.array([1, 0, 0, 1]) / math.sqrt(2)
    worst = 0.0
    for _ in range(20):
        p = qec.PauliProbs(*r.dirichlet(np.ones(4)))
        sim = qec.to_plus_minus_basis(qec.pauli_qec_decoded(p, phi_plus))
        worst = max(worst, float(np.max(np.abs(sim - qec.theta_matrix(p)))))
    verdict(7, {f"max deviation {worst:.1e} <= 1e-9": worst <= 1e-9})


def test_criterion_8_p_fail():
    decreasing = all(np.all(np.diff([qec.p_fail(p, t) for t in range(21)]) < 0) for p in (0.1, 0.3, 0.45))
    verdict(8, {
        "P(0.1,1) = 0.028": abs(qec.p_fail(0.1, 1) - 0.028) <= 1e-12,
        "strictly decreasing in t": decreasing,
    })


def _bloch_state(r, radius):
    n = r.normal(size=3)
    n *= radius / np.linalg.norm(n)
    return (np.eye(2) + n[0] * st.PAULI_X + n[1] * st.PAULI_Y + n[2] * st.PAULI_Z) / 2


def test_criterion_9_property_suites():
    r = np.random.default_rng(9)
    g = st.gibbs(st.Hamiltonian([0.0, 1.0]), 0.5)
    builders = [
        ch.identity_channel(2), ch.identity_channel(3), ch.phase_damping(0.37), ch.amplitude_damping(0.81),
        ch.phase_flip(0.2), ch.pauli_channel([0.5, 0.2, 0.2, 0.1]),
        ch.correlated_z_noise(2, S2_PROBS), ch.correlated_z_noise(3, S3_PROBS),
        ch.depolarizing(0.4, 2), ch.depolarizing(0.7, 3), ch.thermal_dephasing_noise(0.6, g),
    ]
    cptp = max(c.completeness_defect() for c in builders)

    contractive = True
    for c in builders:
        for _ in range(100):
            a, b = st.random_density_matrix(c.in_dim, r), st.random_density_matrix(c.in_dim, r)
            contractive &= fn.relative_entropy(c.apply(a.mat), c.apply(b.mat)) <= fn.relative_entropy(a, b) + 1e-9

    gammas = [g, st.gibbs(st.Hamiltonian([0.0, 0.4, 1.3]), 0.8)]
    dephasing_ok = True
    for _ in range(100):
        for gam in gammas:
            d = gam.mat.shape[0]
            mu = st.random_density_matrix(d, r)
            dephasing_ok &= fn.relative_entropy(fn.dephase(mu), gam) <= fn.relative_entropy(mu, gam) + 1e-12

    unitary_ok = True
    for _ in range(50):
        mu = st.random_density_matrix(2, r)
        u = np.diag(np.exp(1j * r.uniform(0, 2 * math.pi, 2)))
        ad = ch.amplitude_damping(r.uniform(0.05, 0.95))
        unitary_ok &= abs(rates.coherence_rate(mu, ad) - rates.coherence_rate(u @ mu.mat @ u.conj().T, ad)) <= 1e-9

    monotone = True
    for _ in range(20):
        rho0 = _bloch_state(r, r.uniform(0.3, 1.0))
        t, delta = r.uniform(0.0, 2.0), r.uniform(1e-2, 0.2)
        noise = ch.depolarizing(r.uniform(0.05, 0.95), 2)
        f0, f1 = (rates.purity_rate(rates.depolarizing_trajectory(rho0, s), noise, 2) for s in (t, t + delta))
        monotone &= f1 > f0

    reversible = True
    for theory in (rates.ResourceTheory.coherence(), rates.ResourceTheory.purity(3)):
        for _ in range(25):
            a, b = st.random_density_matrix(3, r), st.random_density_matrix(3, r)
            try:
                prod = rates.reversible_rate(a, b, theory) * rates.reversible_rate(b, a, theory)
            except Degenerate:
                continue
            reversible &= abs(prod - 1) <= 1e-9

    verdict(9, {
        f"CPTP completeness (max {cptp:.1e})": cptp <= 1e-10,
        "relative entropy contractivity": bool(contractive),
        "dephasing lowers S(mu||gamma)": bool(dephasing_ok),
        "diagonal-unitary invariance": bool(unitary_ok),
        "depolarizing monotonicity (qubits)": bool(monotone),
        "reversibility products": bool(reversible),
    })


def test_criterion_10_purity():
    increasing = True
    for p in (0.1, 0.5, 0.9):
        res = dilution.purity_depolarizing_sweep(p, n=100)
        increasing &= bool(np.all(np.diff([pt.lhs for pt in res.points]) > 0)) and len(res.points) >= 99
    excess = {}
    for name, channel in (("depolarizing", ch.depolarizing(0.3)), ("dephasing", ch.phase_damping(0.6))):
        rep = dilution.purity_correlation_search(channel, k=2, trials=10_000, seed=0)
        excess[name] = rep.excess
    verdict(10, {
        "sweep increasing toward 1/2": increasing,
        **{f"{k} correlation excess {v:.1e} <= 1e-6": v <= 1e-6 for k, v in excess.items()},
    })
