"""Taxonomy of generator vector fields and of the spacetimes they generate.

Three layers:

* classify_vector — least-squares fit of nabla P = w X + eta(X) P per point,
  then the ladder of special cases (torqued, concircular, recurrent,
  concurrent, parallel, self-torse-forming, anti-torqued, geodesic, Killing).
* quasi-Einstein analysis — fit Ric = a g + b pi x pi, Einstein verdict,
  Einstein-type kinds theta via the traceless tensors E^theta, and the
  data-level equivalences between E^theta = 0 and the corresponding
  quasi-Einstein normal forms.
* GRW detection — unit timelike generator with nabla_X P = X + pi(X) P,
  plus the identity battery that structure implies (eigenvalue chain,
  parallel torsion, specialised Ricci forms, perfect-fluid coefficients).

All residuals follow the package policy: max-norm over components divided by
(1 + max |g_ij|) at the point, compared against a single tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .connection import SSConnection, build_connection, check_concircular
from .curvature import CurvatureBundle
from .fdcheck import fd_jacobian
from .geometry import MetricSpec, VectorFieldSpec


def _scale(g: np.ndarray) -> float:
    return 1.0 + float(np.max(np.abs(g)))


# ---------------------------------------------------------------------------
# vector-field taxonomy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VectorTaxonomy:
    """Pointwise classification of the generator.

    When the field vanishes at the point the fit is unidentifiable; then
    ``indeterminate`` is True and every verdict is None rather than defaulted.
    """

    indeterminate: bool
    omega_hat: float | None = None
    eta_hat: np.ndarray | None = None
    fit_residual: float | None = None
    torse_forming: bool | None = None
    torqued: bool | None = None
    concircular_fialkow: bool | None = None   # eta = 0
    concircular_yano: bool | None = None      # d eta = 0 (finite-differenced)
    deta_residual: float | None = None
    recurrent: bool | None = None             # w = 0
    concurrent: bool | None = None            # eta = 0, w = 1
    parallel: bool | None = None              # eta = 0, w = 0
    self_torse_forming: bool | None = None    # eta = pi
    anti_torqued: bool | None = None          # eta = -w pi
    geodesic: bool | None = None
    unit_timelike: bool | None = None
    unit_spacelike: bool | None = None
    unit_form_residual: float | None = None   # nabla pi = w (g - eps pi pi)
    conformal_killing: bool | None = None
    conformal_factor: float | None = None
    killing: bool | None = None


def _fit_torse(nabla_p: np.ndarray, P: np.ndarray):
    """Exact normal equations for nabla_i P^k = w d^k_i + P^k eta_i."""
    n = P.shape[0]
    A = np.zeros((n + 1, n + 1))
    A[0, 0] = n
    A[0, 1:] = P
    A[1:, 0] = P
    A[1:, 1:] = (P @ P) * np.eye(n)
    rhs = np.zeros(n + 1)
    rhs[0] = np.trace(nabla_p)
    rhs[1:] = P @ nabla_p
    sol = np.linalg.solve(A, rhs)
    return float(sol[0]), sol[1:]


def classify_vector(m: MetricSpec, p: VectorFieldSpec, point,
                    tol: float = 1e-8, fd_step: float = 1e-5,
                    conn: SSConnection | None = None) -> VectorTaxonomy:
    c = conn if conn is not None else build_connection(m, p, point)
    f = c.frame
    sc = _scale(f.g)
    if float(np.max(np.abs(c.P))) <= tol * sc:
        return VectorTaxonomy(indeterminate=True)

    M = c.nabla_P()  # [k, i]
    w, eta = _fit_torse(M, c.P)
    fit_res = float(np.max(np.abs(
        M - w * np.eye(c.n) - np.outer(c.P, eta)))) / sc
    torse = fit_res <= tol

    eta_small = float(np.max(np.abs(eta))) / sc <= tol
    w_zero = abs(w) / sc <= tol
    w_one = abs(w - 1.0) / sc <= tol
    eta_P = float(eta @ c.P)

    deta_res = None
    yano = None
    if torse:
        def eta_field(q):
            cq = build_connection(m, p, q)
            return _fit_torse(cq.nabla_P(), cq.P)[1]

        deta = fd_jacobian(eta_field, f.point, fd_step)  # [i, a] = del_a eta_i
        deta_res = float(np.max(np.abs(deta - deta.T))) / sc
        yano = deta_res <= tol

    geodesic = float(np.max(np.abs(
        np.einsum("ki,i->k", M, c.P)))) / sc <= tol

    pi_P = c.pi_P
    timelike = abs(pi_P + 1.0) / sc <= tol
    spacelike = abs(pi_P - 1.0) / sc <= tol
    unit_form = None
    if timelike or spacelike:
        eps = 1.0 if spacelike else -1.0
        npi = c.nabla_pi().T  # [a, i] = (nabla_a pi)_i
        unit_form = float(np.max(np.abs(
            npi - w * (f.g - eps * np.outer(c.pi, c.pi))))) / sc

    lie_g = (np.einsum("ija,a->ij", f.dg, c.P)
             + np.einsum("aj,ai->ij", f.g, c.dP)
             + np.einsum("ia,aj->ij", f.g, c.dP))
    factor = float(np.einsum("ij,ij->", f.ginv, lie_g)) / (2.0 * c.n)
    conf_res = float(np.max(np.abs(lie_g - 2.0 * factor * f.g))) / sc
    conformal = conf_res <= tol

    return VectorTaxonomy(
        indeterminate=False,
        omega_hat=w,
        eta_hat=eta,
        fit_residual=fit_res,
        torse_forming=torse,
        torqued=torse and abs(eta_P) / sc <= tol,
        concircular_fialkow=torse and eta_small,
        concircular_yano=yano,
        deta_residual=deta_res,
        recurrent=torse and w_zero,
        concurrent=torse and eta_small and w_one,
        parallel=torse and eta_small and w_zero,
        self_torse_forming=torse and
            float(np.max(np.abs(eta - c.pi))) / sc <= tol,
        anti_torqued=torse and
            float(np.max(np.abs(eta + w * c.pi))) / sc <= tol,
        geodesic=geodesic,
        unit_timelike=timelike,
        unit_spacelike=spacelike,
        unit_form_residual=unit_form,
        conformal_killing=conformal,
        conformal_factor=factor,
        killing=conformal and abs(factor) / sc <= tol,
    )


# ---------------------------------------------------------------------------
# quasi-Einstein structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RicciData:
    """Bare (g, Ric, pi) triple; enough for every data-level theorem here."""

    g: np.ndarray
    ric: np.ndarray
    pi: np.ndarray

    @property
    def n(self) -> int:
        return self.g.shape[0]

    @property
    def ginv(self) -> np.ndarray:
        inv = np.linalg.inv(self.g)
        return 0.5 * (inv + inv.T)

    @property
    def r(self) -> float:
        return float(np.einsum("ab,ab->", self.ginv, self.ric))

    @property
    def pi_P(self) -> float:
        return float(self.pi @ self.ginv @ self.pi)

    @staticmethod
    def from_bundle(bundle: CurvatureBundle) -> "RicciData":
        c = bundle.connection
        return RicciData(c.frame.g, bundle.ricci["g"], c.pi)


@dataclass(frozen=True)
class QuasiEinsteinFit:
    a: float
    b: float
    residual: float
    quasi_einstein: bool
    einstein: bool
    b_identifiable: bool


def classify_quasi_einstein(d: RicciData, tol: float = 1e-8) -> QuasiEinsteinFit:
    """Least-squares Ric = a g + b pi x pi with an Einstein special case."""
    sc = _scale(d.g)
    pp = np.outer(d.pi, d.pi)
    gg = float(np.sum(d.g * d.g))
    if float(np.max(np.abs(d.pi))) / sc <= tol:
        a = float(np.sum(d.g * d.ric)) / gg
        b, identifiable = 0.0, False
    else:
        identifiable = True
        gram = np.array([[gg, float(np.sum(d.g * pp))],
                         [float(np.sum(d.g * pp)), float(np.sum(pp * pp))]])
        rhs = np.array([float(np.sum(d.g * d.ric)),
                        float(np.sum(pp * d.ric))])
        a, b = np.linalg.solve(gram, rhs)
    res = float(np.max(np.abs(d.ric - a * d.g - b * pp))) / sc
    einstein = float(np.max(np.abs(
        d.ric - (d.r / d.n) * d.g))) / sc <= tol
    return QuasiEinsteinFit(float(a), float(b), res, res <= tol,
                            einstein, identifiable)


def _einstein_theta_from_data(theta, d: RicciData) -> np.ndarray:
    """E^theta from (g, Ric, pi) through the traceless-tensor relations."""
    n = d.n
    e_g = d.ric - (d.r / n) * d.g
    if theta in ("g", 1, 2, 3):
        return e_g
    pp = np.outer(d.pi, d.pi)
    pP = d.pi_P
    if theta == 0:
        return e_g + (n - 1) / (4.0 * n) * pP * d.g - 0.25 * (n - 1) * pp
    if theta == 4:
        return e_g + (n - 1) / float(n) * pP * d.g - float(n - 1) * pp
    if theta == 5:
        return e_g + (n - 1) / (2.0 * n) * pP * d.g - 0.5 * (n - 1) * pp
    raise ValueError("unknown curvature family %r" % (theta,))


@dataclass(frozen=True)
class KindVerdict:
    theta: object
    residual: float
    holds: bool


def einstein_type(theta, source, tol: float = 1e-8) -> KindVerdict:
    """Does E^theta vanish?  ``source`` is a CurvatureBundle or RicciData."""
    if isinstance(source, CurvatureBundle):
        g = source.frame.g
        e = source.einstein[theta]
    else:
        g = source.g
        e = _einstein_theta_from_data(theta, source)
    res = float(np.max(np.abs(e))) / _scale(g)
    return KindVerdict(theta, res, res <= tol)


_QE_FORM_COEFFS = {
    # theta -> (a as function of (n, r, piP), b coefficient of pi x pi)
    0: lambda n, r, pP: ((4.0 * r - (n - 1) * pP) / (4.0 * n), (n - 1) / 4.0),
    4: lambda n, r, pP: ((r - (n - 1) * pP) / float(n), float(n - 1)),
    5: lambda n, r, pP: ((2.0 * r - (n - 1) * pP) / (2.0 * n), (n - 1) / 2.0),
}

_GRW_KIND_R = {
    0: lambda n: (n - 1) * (5 * n - 1) / 4.0,
    4: lambda n: (n - 1) * (2 * n - 1.0),
    5: lambda n: (n - 1) * (3 * n - 1) / 2.0,
}


@dataclass(frozen=True)
class EquivalenceReport:
    """Both directions of `E^theta = 0 iff Ric has the theta normal form`."""

    theta: int
    e_residual: float
    form_residual: float
    e_holds: bool
    form_holds: bool
    consistent: bool
    grw_kind_r: float | None      # expected scalar for unit timelike pi
    r: float
    grw_kind_matches: bool | None


def quasi_einstein_equivalences(theta: int, d: RicciData,
                                tol: float = 1e-8) -> EquivalenceReport:
    if theta not in _QE_FORM_COEFFS:
        raise ValueError("equivalences are stated for families 0, 4, 5")
    n, r, pP = d.n, d.r, d.pi_P
    sc = _scale(d.g)
    e = _einstein_theta_from_data(theta, d)
    e_res = float(np.max(np.abs(e))) / sc
    a, b = _QE_FORM_COEFFS[theta](n, r, pP)
    form = a * d.g + b * np.outer(d.pi, d.pi)
    form_res = float(np.max(np.abs(d.ric - form))) / sc
    e_holds, form_holds = e_res <= tol, form_res <= tol

    kind_r = None
    kind_match = None
    if abs(pP + 1.0) <= tol * sc:
        kind_r = _GRW_KIND_R[theta](n)
        kind_match = abs(r - kind_r) <= tol * (1.0 + abs(kind_r))
    return EquivalenceReport(theta, e_res, form_res, e_holds, form_holds,
                             e_holds == form_holds, kind_r, r,
                             kind_match if form_holds else None)


# ---------------------------------------------------------------------------
# GRW detection and its identity battery
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GRWReport:
    lorentzian: bool
    unit_timelike: bool
    generator_residual: float     # nabla_X P - X - pi(X) P
    passes: bool
    omega: float
    omega_is_one: bool | None
    nabla1_P_residual: float | None


def grw_detect(c: SSConnection, tol: float = 1e-8) -> GRWReport:
    f = c.frame
    sc = _scale(f.g)
    lorentzian = f.lorentzian
    unit = abs(c.pi_P + 1.0) / sc <= tol
    gen_res = float(np.max(np.abs(
        c.nabla_P() - np.eye(c.n) - np.outer(c.P, c.pi)))) / sc
    passes = lorentzian and unit and gen_res <= tol
    if not passes:
        return GRWReport(lorentzian, unit, gen_res, False, c.omega,
                         None, None)
    n1p = c.dP + np.einsum("kam,m->ka", c.gamma1, c.P)
    return GRWReport(lorentzian, unit, gen_res, True, c.omega,
                     abs(c.omega - 1.0) <= tol,
                     float(np.max(np.abs(n1p))) / sc)


def grw_identity_suite(bundle: CurvatureBundle) -> dict:
    """Residuals of the identities a GRW generator forces; keys by content."""
    from .curvature import nabla1_torsion  # local to avoid an import cycle

    c = bundle.connection
    f = c.frame
    n = c.n
    sc = _scale(f.g)
    pi, P = c.pi, c.P
    pp = np.outer(pi, pi)
    ric_g = bundle.ricci["g"]
    out = {}

    def put(name, arr):
        out[name] = float(np.max(np.abs(arr))) / sc

    target = (n - 1.0) * pi
    put("ric1_of_P", bundle.ricci[1] @ P)
    put("ric_g_eigen", ric_g @ P - target)
    put("ric0_eigen", 4.0 * bundle.ricci[0] @ P - target)
    put("ric4_eigen", bundle.ricci[4] @ P - target)
    put("ric5_eigen", 2.0 * bundle.ricci[5] @ P - target)

    put("nabla1_torsion", nabla1_torsion(c))

    put("ric0_form", bundle.ricci[0] - (ric_g - 0.25 * (n - 1) * (4 * f.g + pp)))
    for t in (1, 2, 3):
        put("ric%d_form" % t, bundle.ricci[t] - (ric_g - (n - 1.0) * f.g))
    put("ric4_form", bundle.ricci[4] - (ric_g - (n - 1.0) * (f.g + pp)))
    put("ric5_form", bundle.ricci[5] - (ric_g - 0.5 * (n - 1) * (2 * f.g + pp)))

    npi = c.nabla_pi()  # [i, a]
    put("nabla_P_pi", np.einsum("ia,a->i", npi, P))
    lie_pi = (np.einsum("ia,a->i", c.dpi, P)
              + np.einsum("a,ai->i", pi, c.dP))
    put("lie_P_pi", lie_pi)
    put("torsion_of_P", np.einsum("kij,i->kj", c.torsion, P) - c.nabla_P())
    return out


# ---------------------------------------------------------------------------
# perfect-fluid coefficients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FluidKindReport:
    """Per-family quasi-Einstein fits with the GRW coefficient identities."""

    fits: dict                     # theta -> QuasiEinsteinFit
    a_minus_b: float               # for the Levi-Civita family
    a_minus_b_holds: bool          # == n - 1
    rewrite_residual: float        # a = r/(n-1) - 1, b = r/(n-1) - n


def perfect_fluid_kind(bundle: CurvatureBundle,
                       tol: float = 1e-8) -> FluidKindReport:
    c = bundle.connection
    n = c.n
    fits = {}
    for t in ("g", 0, 1, 2, 3, 4, 5):
        d = RicciData(c.frame.g, bundle.ricci[t], c.pi)
        fits[t] = classify_quasi_einstein(d, tol)
    fg = fits["g"]
    amb = fg.a - fg.b
    r = bundle.scalar["g"]
    rewrite = max(abs(fg.a - (r / (n - 1.0) - 1.0)),
                  abs(fg.b - (r / (n - 1.0) - n)))
    return FluidKindReport(fits, amb,
                           abs(amb - (n - 1.0)) <= tol * n,
                           rewrite / (1.0 + abs(r)))


# ---------------------------------------------------------------------------
# one-call point classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassificationReport:
    point: np.ndarray
    concircular: bool
    concircular_residual: float
    taxonomy: VectorTaxonomy
    quasi_einstein: QuasiEinsteinFit
    kinds: dict                    # theta -> KindVerdict
    grw: GRWReport
    grw_identities: dict | None
    fluid: FluidKindReport | None


def classify_point(m: MetricSpec, p: VectorFieldSpec, point,
                   bundle: CurvatureBundle, tol: float = 1e-8,
                   fd_step: float = 1e-5) -> ClassificationReport:
    c = bundle.connection
    conc = check_concircular(c, tol)
    taxonomy = classify_vector(m, p, point, tol, fd_step, conn=c)
    data = RicciData.from_bundle(bundle)
    qe = classify_quasi_einstein(data, tol)
    kinds = {t: einstein_type(t, bundle, tol) for t in THETAS_ALL}
    grw = grw_detect(c, tol)
    identities = grw_identity_suite(bundle) if grw.passes else None
    fluid = perfect_fluid_kind(bundle, tol) if grw.passes else None
    return ClassificationReport(c.frame.point, conc.holds, conc.residual,
                                taxonomy, qe, kinds, grw, identities, fluid)


THETAS_ALL = ("g", 0, 1, 2, 3, 4, 5)
