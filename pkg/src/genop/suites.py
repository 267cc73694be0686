"""Verification suites: every check returns a CheckReport, none aborts the run."""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import factorial, pi
import traceback

import numpy as np
from scipy import integrate

from . import desitter as ds
from .contour import EPS, MAX_NODES_2D, default_radius, taylor_coefficients_2d
from .errors import GenopError, NonConvergenceError
from .generating import generating_values, recover_brackets
from .library import (
    BASE_POINTS, analytic_test_functions, compact_bump_1d, function_library, polynomial_library,
)
from .powers import (
    PowerParameter, beta_pairing, boundary_value_check, kernel_K, kernel_factorization_residual,
    pair_power, residue_at_pole,
)
from .rankin_cohen import bracket_from_taylor, bracket_magnitude, rc_via_lemma
from .report import CheckReport
from . import sbo

SUITES = ("series", "residues", "beta", "kernels", "covariance", "desitter", "poisson", "fourier",
          "embedding")


@dataclass
class SuiteConfig:
    nodes: int = 256
    max_order: int = 12
    seed: int = 20230626
    tolerances: dict = field(default_factory=dict)
    tol_scale: float = 1.0
    workers: int = 4

    def tol(self, name):
        base = self.tolerances.get(name, DEFAULT_TOLERANCES[name])
        return base * self.tol_scale

    def rng(self, name):
        # one stream per check, so results do not depend on scheduling
        tag = sum((i + 1) * ord(c) for i, c in enumerate(name))
        return np.random.default_rng([self.seed, tag])

    def echo(self):
        return {"nodes": self.nodes, "max_order": self.max_order, "seed": self.seed,
                "tol_scale": self.tol_scale,
                "tolerances": {k: self.tol(k) for k in sorted(DEFAULT_TOLERANCES)}}


DEFAULT_TOLERANCES = {
    "series.generating_identity": 1e-8,
    "series.recovery": 1e-7,
    "series.lemma": 1e-8,
    "embedding.closed_form_plus": 1e-8,
    "embedding.closed_form_minus": 1e-8,
    "beta.closed_form_vs_quadrature": 1e-6,
    "beta.boundary_rate": 0.05,
    "residues.ladder_polynomial": 1e-14,
    "residues.ladder_analytic": 1e-8,
    "residues.ibp_ladder": 1e-8,
    "residues.generating_link": 1e-8,
    "residues.gamma_continuation": 1e-10,
    "kernels.factorization": 1e-8,
    "kernels.swap": 1e-15,
    "covariance.sbo": 1e-4,
    "covariance.sbo_refinement": 1.0,
    "covariance.duality": 1e-4,
    "covariance.swap": 1e-6,
    "covariance.group_law": 1e-10,
    "desitter.chart_identities": 1e-10,
    "desitter.measure": 1e-6,
    "desitter.roundtrip": 1e-10,
    "desitter.equivariance": 1e-10,
    "desitter.pullback": 1e-10,
    "desitter.eigen_spectrum": 1e-4,
    "poisson.eigen_equation_real": 1e-4,
    "poisson.eigen_equation_complex": 1e-4,
    "poisson.covariance": 1e-4,
    "fourier.factorization": 1e-4,
}

_REGISTRY = {}


def check(suite, name, provenance):
    def deco(fn):
        _REGISTRY[name] = (suite, fn, provenance)
        return fn
    return deco


def check_names(suite="all"):
    return sorted(n for n, (s, _, _) in _REGISTRY.items() if suite == "all" or s == suite)


# --- series -----------------------------------------------------------------

def _series_nodes(cfg):
    return min(cfg.nodes, MAX_NODES_2D // 2)


def _cases():
    for f in function_library():
        for z in BASE_POINTS:
            yield f, complex(z), default_radius(f.singular_distance(z))


@check("series", "series.generating_identity",
       "T f(z, t) = sum_l t^l/l! R_l f(z), uniformly for small t")
def _generating_identity(cfg):
    L = cfg.max_order
    n = _series_nodes(cfg)
    worst, floor, where = 0.0, 0.0, None
    for f, z, r in _cases():
        ts = r / 4 * np.exp(1j * (0.3 + 2 * pi * np.arange(4) / 4))
        T = generating_values(f, z, ts, r, nodes=n)
        C = taylor_coefficients_2d(f, z, (L + 1, L + 1), r=r, nodes=n)
        br = np.array([bracket_from_taylor(C, l) for l in range(L + 1)])
        terms = np.array([[t ** l / factorial(l) * b for l, b in enumerate(br)] for t in ts])
        S = terms.sum(axis=1)
        err = float(np.max(np.abs(T - S)))
        floor = max(floor, 1e2 * EPS * float(np.max(np.abs(terms).sum(axis=1))))
        if err >= worst:
            worst, where = err, (f.name, z)
    return worst, [(n, worst)], floor, {"L": L, "cases": 5 * len(function_library()),
                                        "worst_case": where, "t_radius": "r/4"}


def _bracket_cases(cfg, orders):
    n = _series_nodes(cfg)
    for f, z, r in _cases():
        C = taylor_coefficients_2d(f, z, (max(orders) + 1,) * 2, r=r, nodes=n)
        yield f, z, r, n, C


def _rel(a, b, scale):
    # brackets that vanish identically are compared in absolute terms
    return abs(a - b) / max(abs(b), scale, 1.0)


RECOVERY_RADIUS = 0.8


@check("series", "series.recovery", "R_l f(z) = (d/dt)^l T f(z, t) at t = 0")
def _recovery(cfg):
    orders = list(range(min(8, cfg.max_order) + 1))
    worst, where = 0.0, None
    for f, z, r, n, C in _bracket_cases(cfg, orders):
        # a wider torus moves the t-circle out and shrinks the l!/rho^l amplification
        r_wide = min(1.0, RECOVERY_RADIUS * f.singular_distance(z))
        rec = recover_brackets(f, z, r_wide, orders, nodes=n, max_order=cfg.max_order)
        for l in orders:
            e = _rel(rec[l], bracket_from_taylor(C, l), bracket_magnitude(C, l))
            if e >= worst:
                worst, where = e, (f.name, z, l)
    # Cauchy t-derivative on |t| = rho amplifies rounding by l!/rho^l
    return worst, [(n, worst)], 1e3 * EPS, {"orders": orders, "worst_case": where,
                                            "metric": "|a-b| / max(|R_l f|, sum_j C(l,j)^2 |d^l f|, 1)"}


@check("series", "series.lemma", "R_l f = d^2l/dz1^l dz2^l [(z1 - z2)^l f] / ((-1)^l l!) on the diagonal")
def _lemma(cfg):
    orders = list(range(min(8, cfg.max_order) + 1))
    worst, where = 0.0, None
    for f, z, r, n, C in _bracket_cases(cfg, orders):
        for l in orders:
            v = rc_via_lemma(f, l, z, r=r, nodes=n, max_order=cfg.max_order)
            e = _rel(v, bracket_from_taylor(C, l), bracket_magnitude(C, l))
            if e >= worst:
                worst, where = e, (f.name, z, l)
    return worst, [(n, worst)], 1e3 * EPS, {"orders": orders, "worst_case": where}


# --- embedding --------------------------------------------------------------

EMBED_PROBES = (-2.0, -1.1, -0.45, 0.0, 0.3, 0.8, 1.7, 3.0, 0.3 + 0.4j, -0.5 - 0.3j)


def _embedding(sign, cfg):
    worst, minval = 0.0, np.inf
    for ell in range(7):
        rep = ds.embedding_check(ell, sign, EMBED_PROBES)
        worst = max(worst, rep["max_relative_error"])
        minval = min(minval, rep["min_abs_value"])
    return worst, [(cfg.nodes, worst)], 1e3 * EPS, {"orders": list(range(7)),
                                                    "min_abs_bracket": minval,
                                                    "nonvanishing": bool(minval > 0)}


@check("embedding", "embedding.closed_form_plus",
       "R_l ftilde_l^+ (z) = (2l)!/l! (z + i)^(-2l-2), nonzero")
def _embed_plus(cfg):
    return _embedding("+", cfg)


@check("embedding", "embedding.closed_form_minus",
       "R_l ftilde_l^- (z) = (2l)!/l! (z - i)^(-2l-2), nonzero")
def _embed_minus(cfg):
    return _embedding("-", cfg)


# --- beta -------------------------------------------------------------------

def beta_quadrature(lam, w):
    """int_0^inf t^lam/(t + w) dt by algebraic-weight adaptive quadrature, -1 < lam < 0."""
    def part(fun, alpha):
        re = integrate.quad(lambda s: fun(s).real, 0, 1, weight="alg", wvar=(alpha, 0.0),
                            epsabs=1e-14, epsrel=1e-12, limit=200)[0]
        im = integrate.quad(lambda s: fun(s).imag, 0, 1, weight="alg", wvar=(alpha, 0.0),
                            epsabs=1e-14, epsrel=1e-12, limit=200)[0]
        return complex(re, im)
    head = part(lambda t: 1 / (t + w), lam)
    # t = 1/s on [1, inf)
    tail = part(lambda s: 1 / (1 + w * s), -lam - 1)
    return head + tail


@check("beta", "beta.closed_form_vs_quadrature", "<t_+^lam, 1/(t + w)> = -pi w^lam / sin(pi lam)")
def _beta_grid(cfg):
    lams = np.linspace(-0.85, -0.15, 5)
    ws = [0.5 + 0.7j, 1.1 - 0.4j, 1.75, 2.4 + 1.2j, 3.0 - 1.5j]
    worst = 0.0
    for lam in lams:
        for w in ws:
            ref = beta_pairing("+", lam, w)
            worst = max(worst, abs(beta_quadrature(lam, w) - ref) / abs(ref))
            # t -> -t turns the side - pairing at -w into minus the side + one at w
            ref_m = beta_pairing("-", lam, -w)
            worst = max(worst, abs(ref_m + ref) / abs(ref))
    return worst, [(25, worst)], 1e-11, {"lambdas": list(lams), "w": ws}


@check("beta", "beta.boundary_rate",
       "w^lam(x + i eps) - w^lam(x - i eps) -> 2i sin(pi lam) x_-^lam, observed order >= 1 in eps")
def _beta_boundary(cfg):
    epss = (1e-2, 1e-3, 1e-4)
    worst = 0.0
    orders = {}
    for lam in (-0.5, 0.3, -0.2 + 0.4j):
        for x in (-1.0, -2.0, 1.0):
            errs = []
            for e in epss:
                d, ref = boundary_value_check(lam, x, e)
                errs.append(abs(d - ref))
            rates = [np.log10(errs[k] / errs[k + 1]) for k in range(2)]
            orders[f"lam={lam}, x={x}"] = rates
            # on the cut the symmetric difference converges at O(eps^2); order >= 1 is the claim
            worst = max(worst, max(max(0.0, 1 - r) for r in rates))
    return worst, [(e, None) for e in epss], 1e-3, {"observed_orders": orders}


# --- residues ---------------------------------------------------------------

@check("residues", "residues.ladder_polynomial", "l! res_{mu=-l-1} <t_+^mu, phi> = phi^(l)(0), polynomials")
def _ladder_poly(cfg):
    worst = 0.0
    for phi in polynomial_library():
        for l in range(7):
            exact = factorial(l) * (phi.taylor[l] if l < len(phi.taylor) else 0)
            got = factorial(l) * residue_at_pole("+", l, phi)
            worst = max(worst, abs(got - exact) / max(1, abs(exact)))
            got_m = factorial(l) * residue_at_pole("-", l, phi)
            worst = max(worst, abs(got_m - (-1) ** l * exact) / max(1, abs(exact)))
    return worst, [(7, worst)], 0.0, {"orders": list(range(7))}


@check("residues", "residues.ladder_analytic", "l! res_{mu=-l-1} <t_+^mu, phi> = phi^(l)(0), analytic phi")
def _ladder_analytic(cfg):
    worst = 0.0
    for phi, der in analytic_test_functions():
        for l in range(7):
            ref = der(l)
            worst = max(worst, abs(factorial(l) * residue_at_pole("+", l, phi) - ref) / max(1, abs(ref)))
    return worst, [(7, worst)], 1e3 * EPS, {"functions": [p.name for p, _ in analytic_test_functions()]}


@check("residues", "residues.ibp_ladder", "<t_+^(mu+1), phi'> = -(mu+1) <t_+^mu, phi>")
def _ibp(cfg):
    worst = 0.0
    for shift in (0.0, 0.3, -0.45):
        phi, dphi = compact_bump_1d(1.5, shift)
        for mu in (-0.5, 0.4, -1.5 + 0.3j, -2.7, -3.2 - 0.6j):
            for side, sg in (("+", -1), ("-", 1)):
                a = pair_power(PowerParameter(mu + 1, side), dphi)
                b = pair_power(PowerParameter(mu, side), phi)
                worst = max(worst, abs(a - sg * (mu + 1) * b) / (1 + abs(b)))
    return worst, [(1, worst)], 1e-12, {}


@check("residues", "residues.generating_link",
       "res_{mu=-l-1} <t_+^mu, T f(z, .)> = R_l f(z) / l!")
def _gen_link(cfg):
    worst = 0.0
    fs = [ds.extended_eigenfunction(2, "+"), ds.extended_eigenfunction(1, "-")] + function_library()[11:14]
    for f in fs:
        for z in (0.0, 0.35 + 0.2j):
            r = default_radius(f.singular_distance(z))
            for res, ref in sbo.residue_links(f, range(5), z, r, nodes=_series_nodes(cfg)):
                scale = max(1.0, abs(ref))
                worst = max(worst, abs(res - ref) / scale)
    return worst, [(_series_nodes(cfg), worst)], 1e3 * EPS, {"functions": [f.name for f in fs]}


@check("residues", "residues.gamma_continuation", "<t_+^mu, e^-t> = Gamma(mu + 1), continued in mu")
def _gamma(cfg):
    from scipy.special import gamma

    phi = analytic_test_functions()[0][0]
    worst = 0.0
    for mu in (-0.5, 0.3 + 0.2j, -1.5, -2.7 + 0.4j, -4.2, -0.5 + 1j):
        ref = complex(gamma(mu + 1))
        worst = max(worst, abs(pair_power(PowerParameter(mu, "+"), phi) - ref) / abs(ref))
    return worst, [(1, worst)], 1e-13, {}


# --- kernels ----------------------------------------------------------------

def _kernel_tuples(rng, count=50):
    out = []
    while len(out) < count:
        mu = complex(rng.uniform(-0.95, -0.05), rng.uniform(-1, 1))
        z1, z2, z = rng.normal(size=3)
        if abs(z1 - z2) > 1e-3 and min(abs(z1 - z), abs(z2 - z)) > 1e-3:
            out.append((mu, z1, z2, z))
    return out


@check("kernels", "kernels.factorization",
       "<t_+-^mu, 1/Q> = -2 pi i/(z1 - z2) K_-+^mu with Q = (z1 - z2)(t + w)")
def _kernel_fact(cfg):
    tuples = _kernel_tuples(cfg.rng("kernels.factorization"))
    worst = max(kernel_factorization_residual(*t) for t in tuples)
    return worst, [(len(tuples), worst)], 1e3 * EPS, {"tuples": len(tuples)}


@check("kernels", "kernels.swap", "K_+^mu(z2, z1; z) = K_-^mu(z1, z2; z)")
def _kernel_swap(cfg):
    worst = 0.0
    for mu, z1, z2, z in _kernel_tuples(cfg.rng("kernels.swap"), 20):
        for side, other in (("+", "-"), ("-", "+")):
            a = kernel_K(PowerParameter(mu, side), z2, z1, z)
            b = kernel_K(PowerParameter(mu, other), z1, z2, z)
            worst = max(worst, abs(a - b))
    return worst, [(20, worst)], 0.0, {}


# --- covariance -------------------------------------------------------------

COV_SECTION = dict(c1=0.1, w1=0.8, c2=-0.2, w2=0.7, coupling=0.3, phase=0.4)
COV_PROBES = (-0.6, 0.0, 0.45)


@check("covariance", "covariance.sbo",
       "T_mu[(varpi_1^- x varpi_1^-)(g) f] = varpi_{-2mu}^+(g) T_mu f")
def _cov(cfg):
    f = sbo.bump_2d(**COV_SECTION)
    rng = cfg.rng("covariance.sbo")
    gs = [sbo.GroupElement.random_near_identity(rng) for _ in range(20)]
    coarse = [sbo.sbo_covariance_residual("+", -0.5, f, g, COV_PROBES) for g in gs]
    fine = [sbo.sbo_covariance_residual("+", -0.5, f, g, COV_PROBES, n_phi=2 * sbo.DEFAULT_ANGLE_NODES,
                                        n_rho=2 * sbo.DEFAULT_RADIAL_NODES) for g in gs]
    worst = max(coarse)
    return worst, [(sbo.DEFAULT_ANGLE_NODES, worst), (2 * sbo.DEFAULT_ANGLE_NODES, max(fine))], \
        max(fine), {"group_elements": len(gs), "mu": -0.5, "refined_max": max(fine)}


@check("covariance", "covariance.sbo_refinement",
       "covariance residual decreases under one grid refinement (max fine/coarse ratio < 1)")
def _cov_refine(cfg):
    f = sbo.bump_2d(**COV_SECTION)
    rng = cfg.rng("covariance.sbo")  # the same group elements as covariance.sbo
    gs = [sbo.GroupElement.random_near_identity(rng) for _ in range(20)]
    ratios = []
    for g in gs:
        c = sbo.sbo_covariance_residual("+", -0.5, f, g, COV_PROBES)
        fn = sbo.sbo_covariance_residual("+", -0.5, f, g, COV_PROBES, n_phi=2 * sbo.DEFAULT_ANGLE_NODES,
                                         n_rho=2 * sbo.DEFAULT_RADIAL_NODES)
        ratios.append(fn / c if c > 0 else 0.0)
    worst = max(ratios)
    return worst, [(1, worst)], 0.0, {"ratios_max": worst, "ratios_min": min(ratios)}


DUALITY_PAIRS = (
    (dict(center=0.2, halfwidth=0.9, coeffs=(1, 0.5j)), dict(c1=0.1, w1=0.8, c2=-0.2, w2=0.7, coupling=0.3, phase=0.4)),
    (dict(center=-0.3, halfwidth=1.0, coeffs=(1,)), dict(c1=0.2, w1=0.9, c2=0.0, w2=1.0, coupling=-0.2, phase=0.0)),
    (dict(center=0.0, halfwidth=1.1, coeffs=(0.5, 1, -0.3)), dict(c1=-0.3, w1=0.9, c2=0.3, w2=0.9, coupling=0.0, phase=0.6)),
    (dict(center=0.4, halfwidth=0.9, coeffs=(1, -1j)), dict(c1=0.4, w1=0.9, c2=0.1, w2=0.8, coupling=0.5, phase=-0.2)),
    (dict(center=-0.1, halfwidth=0.8, coeffs=(2, 0, 1)), dict(c1=0.0, w1=1.0, c2=0.0, w2=1.0, coupling=0.1, phase=0.3)),
)


@check("covariance", "covariance.duality", "<H_mu h, f> = -2 pi i <h, T_mu f> (constant across pairs)")
def _duality(cfg):
    consts = []
    for hk, fk in DUALITY_PAIRS:
        h = sbo.bump_1d(**hk)
        f = sbo.bump_2d(**fk)
        L, R = sbo.duality_pair("+", -0.5, h, f, n=40)
        consts.append(L / R)
    consts = np.array(consts)
    mean = consts.mean()
    spread = float(np.max(np.abs(consts - mean)) / abs(mean))
    return spread, [(40, spread)], 1e-7, {"constants": list(consts), "mean_constant": complex(mean),
                                         "relative_to_minus_2_pi_i": float(abs(mean / (-2j * pi) - 1)),
                                         "measure": "Lebesgue in the Bruhat chart on both sides"}


@check("covariance", "covariance.swap", "T_mu^+- fcheck = -T_mu^-+ f")
def _swap(cfg):
    worst = 0.0
    sections = [sbo.bump_2d(**fk) for _, fk in DUALITY_PAIRS]
    for f in sections:
        for z in (-1.0, 0.0, 1.0):
            a = sbo.sbo_apply("+", -0.5, f.swapped(), z)
            b = sbo.sbo_apply("-", -0.5, f, z)
            worst = max(worst, abs(a + b))
    return worst, [(sbo.DEFAULT_ANGLE_NODES, worst)], 1e-10, {}


@check("covariance", "covariance.group_law", "varpi(g1 g2) = varpi(g1) varpi(g2)")
def _group_law(cfg):
    rng = cfg.rng("covariance.group_law")
    h = sbo.bump_1d(0.0, 1.2, (1, 0.3j, 0.1))
    xs = np.linspace(-1.5, 1.5, 10)
    worst = 0.0
    for lam, eps in ((1.0, "-"), (0.3 + 0.8j, "+"), (-1.2, "-")):
        p = sbo.LineBundleParam(lam, eps)
        for _ in range(5):
            g1 = sbo.GroupElement.random_near_identity(rng)
            g2 = sbo.GroupElement.random_near_identity(rng)
            lhs = sbo.multiplier_action(p, g1 @ g2, h, xs)
            inner = sbo.act_1d(p, g2, h)
            rhs = sbo.multiplier_action(p, g1, inner, xs)
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst, [(10, worst)], 1e2 * EPS, {}


# --- de Sitter --------------------------------------------------------------

def _ds_points(cfg, name, count=50):
    rng = cfg.rng(name)
    pts = []
    while len(pts) < count:
        p = ds.DeSitterPoint.from_hyperbolic(rng.uniform(-1.5, 1.5), rng.uniform(0, 2 * pi))
        if abs(p.y - p.z) > 1e-2 and abs(p.z) > 1e-2:
            pts.append(p)
    return pts


@check("desitter", "desitter.chart_identities",
       "z1 - z2 = -2/(y - z); (z1 + i)(z2 + i) = 2i(x + iy)/(y - z); the kernel quotient identity")
def _chart_ids(cfg):
    pts = _ds_points(cfg, "desitter.chart_identities")
    rng = cfg.rng("desitter.chart_identities.zeta")
    worst = max(max(ds.chart_identity_residuals(p, rng.uniform(-2, 2))) for p in pts)
    quad = max(p.quadric_residual() for p in pts)
    return max(worst, quad), [(50, worst)], 1e2 * EPS, {"quadric_residual": quad}


@check("desitter", "desitter.measure",
       "invariant measure: cosh t dt dtheta = 2/(z1 - z2)^2 dz1 dz2 = dx dy/|z|")
def _measure(cfg):
    pts = _ds_points(cfg, "desitter.measure")
    worst = max(ds.measure_consistency_residual(p) for p in pts)
    return worst, [(50, worst)], 1e-9, {"ambient_xy_density": "1/|z|"}


@check("desitter", "desitter.roundtrip", "ambient <-> hyperbolic <-> Bruhat round trips")
def _roundtrip(cfg):
    worst = 0.0
    for p in _ds_points(cfg, "desitter.roundtrip"):
        q = ds.DeSitterPoint.from_bruhat(*p.bruhat)
        r = ds.DeSitterPoint.from_hyperbolic(*p.hyperbolic)
        for o in (q, r):
            worst = max(worst, max(abs(a - b) for a, b in zip(o.ambient, p.ambient)))
    return worst, [(50, worst)], 1e2 * EPS, {}


@check("desitter", "desitter.equivariance",
       "Ad(g) on dS^2 is the Mobius action on both Bruhat coordinates; gH -> Ad(g)E_11")
def _equiv(cfg):
    rng = cfg.rng("desitter.equivariance")
    worst = 0.0
    for p in _ds_points(cfg, "desitter.equivariance", 20):
        g = sbo.GroupElement.random_near_identity(rng, 0.3)
        q = ds.act(g, p)
        z1, z2 = p.bruhat
        w1, w2 = q.bruhat
        worst = max(worst, abs(g.mobius(z1) - w1) / (1 + abs(w1)), abs(g.mobius(z2) - w2) / (1 + abs(w2)))
    for _ in range(20):
        g = sbo.GroupElement.random_near_identity(rng, 1.0)
        p = ds.ds_from_group(g)
        M = ds.ad_matrix(g)
        worst = max(worst, float(np.max(np.abs(M - p.matrix()))), p.quadric_residual())
    return worst, [(40, worst)], 1e3 * EPS, {}


@check("desitter", "desitter.pullback", "(z1 - z2) ftilde_l^+-(z1, z2) = f_l^+- (sign (-1)^(l+1) for -)")
def _pullback(cfg):
    pts = _ds_points(cfg, "desitter.pullback")
    worst = 0.0
    for ell in range(5):
        for sign in "+-":
            F = ds.pullback(1, ds.extended_eigenfunction(ell, sign))
            E = ds.eigenfunction(ell, sign)
            c = ds.pullback_sign(ell, sign)
            for p in pts:
                worst = max(worst, abs(F(*p.ambient) - c * E(*p.ambient)))
    return worst, [(50, worst)], 1e3 * EPS, {"minus_sign_factor": "(-1)^(l+1)"}


@check("desitter", "desitter.eigen_spectrum", "Delta f_l^+- = -l(l+1) f_l^+- = -1/4 (2l+2)(2l) f_l^+-")
def _spectrum(cfg):
    pts = _ds_points(cfg, "desitter.eigen_spectrum", 10)
    worst, ratios = 0.0, {}
    for ell in range(5):
        for sign in "+-":
            E = ds.eigenfunction(ell, sign)
            r = np.array([ds.laplacian_ds(E, p) / E(*p.ambient) for p in pts])
            target = ds.eigenvalue(2 * ell + 2)
            spread = float(np.max(np.abs(r - r.mean())))
            worst = max(worst, spread, float(np.max(np.abs(r - target))) / max(1, abs(target)))
            ratios[f"{ell}{sign}"] = complex(r.mean())
    return worst, [(ds.FD_STEP, worst)], 1e-9, {"laplacian_sign": ds.laplacian_sign(),
                                               "mean_ratios": ratios}


# --- Poisson ----------------------------------------------------------------

POISSON_H = dict(center=0.1, halfwidth=1.2, coeffs=(1, 0.3j))


def _poisson_eq(cfg, lam, name):
    h = sbo.bump_1d(**POISSON_H)
    pts = _ds_points(cfg, name, 10)
    trace = []
    worst = 0.0
    for n in (ds.POISSON_NODES, 2 * ds.POISSON_NODES):
        F = ds.poisson_function("+", lam, h, n=n)
        res = 0.0
        for p in pts:
            v = F(*p.ambient)
            res = max(res, abs(ds.laplacian_ds(F, p) - ds.eigenvalue(lam) * v) / (1 + abs(v)))
        trace.append((n, res))
        if n == ds.POISSON_NODES:
            worst = res
    return worst, trace, 1e-9, {"lambda": complex(lam), "eigenvalue": ds.eigenvalue(lam)}


@check("poisson", "poisson.eigen_equation_real", "Delta P_lam h = -1/4 lam(lam - 2) P_lam h, lam = 1.6")
def _poisson_real(cfg):
    return _poisson_eq(cfg, 1.6, "poisson.eigen_equation_real")


@check("poisson", "poisson.eigen_equation_complex",
       "Delta P_lam h = -1/4 lam(lam - 2) P_lam h, lam = 1 + 0.7i")
def _poisson_complex(cfg):
    return _poisson_eq(cfg, 1 + 0.7j, "poisson.eigen_equation_complex")


@check("poisson", "poisson.covariance", "P_lam(varpi_lam^+(g) h)(p) = P_lam h(Ad(g)^-1 p)")
def _poisson_cov(cfg):
    rng = cfg.rng("poisson.covariance")
    h = sbo.bump_1d(**POISSON_H)
    pts = _ds_points(cfg, "poisson.covariance", 5)
    worst = 0.0
    for lam in (1.6, 1 + 0.7j):
        for p in pts:
            g = sbo.GroupElement.random_near_identity(rng)
            gh = sbo.act_1d(sbo.LineBundleParam(lam, "+"), g, h)
            a = ds.poisson_apply("+", lam, gh, p)
            b = ds.poisson_apply("+", lam, h, ds.act(g.inverse(), p))
            worst = max(worst, abs(a - b) / (1 + abs(b)))
    return worst, [(ds.POISSON_NODES, worst)], 1e-10, {}


# --- Fourier ----------------------------------------------------------------

FOURIER_SECTIONS = (
    dict(c1=0.6, w1=0.3, c2=-0.5, w2=0.35, coupling=0.2, phase=0.3),
    dict(c1=0.8, w1=0.35, c2=-0.3, w2=0.3, coupling=0.0, phase=-0.4),
    dict(c1=0.55, w1=0.25, c2=-0.7, w2=0.4, coupling=-0.3, phase=0.1),
    dict(c1=1.0, w1=0.45, c2=-0.4, w2=0.35, coupling=0.4, phase=0.0),
    dict(c1=0.7, w1=0.4, c2=-0.6, w2=0.3, coupling=0.1, phase=0.5),
)
FOURIER_PROBES = (-0.3, 0.1, 0.5)


@check("fourier", "fourier.factorization", "F_lam(iota_1^* f) = c T_{-lam/2} f with one constant c")
def _fourier(cfg):
    consts = []
    lam = 1 + 0.7j
    for fk in FOURIER_SECTIONS:
        f = sbo.bump_2d(**fk)
        H = ds.pulled_back_section(f)
        for z in FOURIER_PROBES:
            # every probe lies where the support meets the between-roots region, so T != 0
            F = ds.fourier_apply("+", lam, H, z)
            T = sbo.sbo_apply("+", -lam / 2, f, z)
            consts.append(F / T)
    consts = np.array(consts)
    mean = consts.mean()
    spread = float(np.max(np.abs(consts - mean)) / abs(mean))
    return spread, [(ds.FOURIER_THETA_NODES, spread)], 1e-8, {
        "lambda": lam, "mean_constant": complex(mean),
        "relative_to_minus_4_pi_i": float(abs(mean / (-4j * pi) - 1)), "samples": len(consts)}


# --- running ----------------------------------------------------------------

def run_check(name, cfg):
    suite, fn, prov = _REGISTRY[name]
    tol = cfg.tol(name)
    try:
        residual, trace, floor, details = fn(cfg)
    except NonConvergenceError as e:
        return CheckReport(name, float("inf"), tol, [(step[0], None) for step in e.trace], prov,
                           floor=float("inf"), details={"error": str(e), "trace_length": len(e.trace)})
    except (GenopError, ArithmeticError, ValueError) as e:
        return CheckReport(name, float("inf"), tol, [], prov, floor=0.0,
                           details={"error": f"{type(e).__name__}: {e}",
                                    "where": traceback.format_exc(limit=1).splitlines()[-1]})
    return CheckReport(name, float(residual), tol, list(trace), prov, floor=float(floor),
                       details=details)


def run_suite(name, cfg):
    if name != "all" and name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    names = check_names(name)
    with ThreadPoolExecutor(max_workers=max(1, cfg.workers)) as ex:
        reports = list(ex.map(lambda n: run_check(n, cfg), names))
    return sorted(reports, key=lambda r: r.check_name)
