"""End-to-end computation for one curve and the full verification suite."""

from __future__ import annotations

from dataclasses import dataclass

from .curve import NSCurve
from .forms import (
    BMatrix,
    QHatMatrix,
    SecondKindForm,
    c_coefficients,
    holomorphic_basis,
    holomorphic_forms,
    pairing,
    solve_dr,
)
from .sigma import SigmaSeries, build_sigma, factorization_check
from .tau import (
    KP,
    CheckResult,
    TauSeries,
    build_tau,
    hirota_check,
    homogeneity_check,
    kp_generating_check,
    reduction_check,
)


@dataclass
class CurveData:
    curve: NSCurve
    W: int
    tau: TauSeries
    B: BMatrix
    c: list
    dr: list[SecondKindForm]
    q: QHatMatrix
    sigma: SigmaSeries


def compute(curve: NSCurve, W: int, gauge: dict | None = None, jobs: int = 1,
            pluckers: dict | None = None) -> CurveData:
    tau = build_tau(curve, W, jobs=jobs, pluckers=pluckers)
    B = holomorphic_basis(curve, W)
    c = c_coefficients(curve, W)
    dr, q = solve_dr(curve, W, gauge)
    sigma = build_sigma(tau, c, q, B)
    return CurveData(curve, W, tau, B, c, dr, q, sigma)


def differential_checks(data: CurveData) -> list[CheckResult]:
    curve, B, q, W = data.curve, data.B, data.q, data.W
    n, g = curve.n, curve.genus
    ring = curve.ring
    gaps = curve.semigroup().gaps
    out = []

    bad = None
    for i in range(1, g + 1):
        for j in range(1, W + 1):
            v = B.entry(i, j)
            want_zero = j < gaps[i - 1] or j % n == 0
            if (want_zero and v != 0) or (j == gaps[i - 1] and v != 1) or \
                    not ring.is_homogeneous(v, j - gaps[i - 1]):
                bad = bad or f"b_{i},{j} = {ring.format(v)}"
    out.append(CheckResult("holomorphic expansion pattern b_ij", W, bad is None, bad))

    bad = None
    for (i, j), v in sorted(q.entries.items()):
        if i + j > W:
            continue
        if i % n == 0 or j % n == 0:
            bad = bad or f"q_{i},{j} = {ring.format(v)} at a multiple of {n}"
        elif v != q.entry(j, i):
            bad = bad or f"q_{i},{j} != q_{j},{i}"
        elif not ring.is_homogeneous(v, i + j):
            bad = bad or f"q_{i},{j} not of degree {i + j}"
    out.append(CheckResult("fundamental form coefficients q_ij", W, bad is None, bad))

    prec = 2 * g + 2
    du = holomorphic_forms(curve, prec) if g else []
    bad = None
    for i in range(g):
        for j in range(g):
            want = 1 if i == j else 0
            checks = [(f"du{gaps[i]} o dr{j + 1}", pairing(du[i], data.dr[j].series), want),
                      (f"du{gaps[i]} o du{gaps[j]}", pairing(du[i], du[j]), 0),
                      (f"dr{i + 1} o dr{j + 1}", pairing(data.dr[i].series, data.dr[j].series), 0)]
            for name, val, target in checks:
                if val != target:
                    bad = bad or f"{name} = {ring.format(val)}"
    out.append(CheckResult("symplectic pairing of du and dr", W, bad is None, bad))
    return out


def verify(data: CurveData, generating_count: int = 4) -> list[CheckResult]:
    """Every structural check, each with the weight bound it certifies."""
    tau = data.tau
    lam = tau.leading
    out = [CheckResult("leading Plucker coordinate equals 1", data.W,
                       tau.pluckers[lam] == 1,
                       None if tau.pluckers[lam] == 1 else data.curve.ring.format(tau.pluckers[lam]))]
    out.append(hirota_check(KP, tau))
    out.extend(kp_generating_check(tau, generating_count))
    out.extend(reduction_check(tau, data.c))
    if data.curve.ring.nvars:
        out.append(homogeneity_check(tau))
        found = data.sigma.series.homogeneity_scan(data.curve.ring)
        ok = found <= {lam.weight}
        out.append(CheckResult("sigma total-weight homogeneity", data.W, ok,
                               None if ok else str(sorted(found))))
    out.extend(differential_checks(data))
    out.append(factorization_check(tau, data.sigma, data.c, data.q, data.B))
    return out
