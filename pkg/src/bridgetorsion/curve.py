"""The Riley curve through a metabelian point: residual and derivatives,
Newton continuation, trace functions, and the limit defining the rational
function F on the character variety.

The curve is parametrized by s (hence by s + 1/s), which keeps every
quantity of record independent of the sqrt(s) branch.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    EstimateDisagreement,
    NewtonDivergence,
    RootCollision,
    SingularPoint,
    ZeroParameter,
)
from .numerics import RingMatrix, richardson_limit
from .precision import DOUBLE
from .reps import evaluate_word, metabelian_u, riley_rep, word_product
from .words import longitude_word


class Dual:
    """First-order jet a + b*eps_u + c*eps_s carrying partials in (u, s)."""

    __slots__ = ("val", "du", "ds")

    def __init__(self, val, du=0.0, ds=0.0):
        self.val = val
        self.du = du
        self.ds = ds

    @staticmethod
    def _lift(x):
        return x if isinstance(x, Dual) else Dual(x)

    def __add__(self, o):
        o = Dual._lift(o)
        return Dual(self.val + o.val, self.du + o.du, self.ds + o.ds)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.val, -self.du, -self.ds)

    def __sub__(self, o):
        return self + (-Dual._lift(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = Dual._lift(o)
        return Dual(
            self.val * o.val,
            self.val * o.du + self.du * o.val,
            self.val * o.ds + self.ds * o.val,
        )

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = Dual._lift(o)
        inv = 1 / o.val
        q = self.val * inv
        return Dual(q, (self.du - q * o.du) * inv, (self.ds - q * o.ds) * inv)

    def __rtruediv__(self, o):
        return Dual._lift(o) / self

    def sqrt(self, scalar_sqrt):
        r = scalar_sqrt(self.val)
        half = 1 / (2 * r)
        return Dual(r, self.du * half, self.ds * half)

    def __repr__(self):
        return f"Dual({self.val!r}, du={self.du!r}, ds={self.ds!r})"


@dataclass(frozen=True)
class RileyPoint:
    """Accepted point on the Riley curve; residual is |phi(s, u)|."""

    s: float
    u: complex
    residual: float


@dataclass(frozen=True)
class TraceSample:
    """Trace data at a curve point: i_mu_hat = s + 1/s, i_lambda = tr rho(lambda)."""

    i_mu_hat: complex
    i_lambda: complex


@dataclass(frozen=True)
class LimitConfig:
    """Knobs of the continuation-and-limit machinery.

    h0 = 2e-2 keeps the smallest grid step at 1.25e-3: below that,
    cancellation noise in I_lambda - 2 (a double zero) dominates the
    Richardson columns whenever H_hat(-2) is small."""

    h0: float = 2e-2
    levels: int = 5
    step_ratio: float = 2.0
    newton_tol: float = 1e-12
    singular_tol: float = 1e-8
    cross_tol: float = 1e-5
    fd_fraction: float = 0.25
    min_h0: float = 1e-6
    max_newton_iter: int = 50


@dataclass(frozen=True)
class FEstimate:
    """Result of the F evaluation: the ratio estimate is the value of record,
    the direct finite-difference estimate is its independent cross-check."""

    value: complex
    direct: complex
    rel_disagreement: float
    error_estimate: float
    direct_error_estimate: float
    max_residual: float
    h0_used: float
    diagnostics: dict = field(default_factory=dict)


def _dual_phi(knot, s, u, prec=DOUBLE, branch=1):
    """phi = W11 + (1-s) W12 with forward-mode partials; also returns the
    pre-cancellation magnitude of the two summands (the evaluation scale)."""
    if s == 0:
        raise ZeroParameter("Riley residual needs s != 0")
    sd = Dual(s, 0.0, 1.0)
    ud = Dual(u, 1.0, 0.0)
    rs = sd.sqrt(prec.sqrt) * branch
    inv = 1 / rs
    zero = Dual(rs.val * 0)
    img_x = RingMatrix(2, (rs, inv, zero, inv))
    img_y = RingMatrix(2, (rs, zero, -(ud * rs), inv))
    w = word_product(img_x, img_y, knot.word)
    w11, w12 = w.entries[0], w.entries[1]
    one_minus_s = Dual(1 - s, 0.0, -1.0)
    phi = w11 + one_minus_s * w12
    scale = abs(w11.val) + abs(one_minus_s.val * w12.val) + 1.0
    return phi, float(scale)


def riley_residual(knot, s, u, prec=DOUBLE, branch=1):
    """phi(s, u) = W11 + (1-s) W12 and its partials (d/du, d/ds), all three
    computed in one dual-number pass through the word product."""
    phi, _ = _dual_phi(knot, s, u, prec, branch)
    return phi.val, phi.du, phi.ds


def metabelian_pairing(p, k):
    """The unique k' in 1..(p-1)/2 with 2k' = +/- k mod p; rho_{k'} is the
    companion representation at whose character F is evaluated."""
    matches = [
        kp
        for kp in range(1, (p - 1) // 2 + 1)
        if (2 * kp - k) % p == 0 or (2 * kp + k) % p == 0
    ]
    if len(matches) != 1:
        raise AssertionError(f"pairing not unique for p={p}, k={k}: {matches}")
    return matches[0]


def trace_longitude(knot, s, u, prec=DOUBLE, branch=1):
    """Trace of the longitude image under the Riley representation."""
    rep = riley_rep(s, u, prec, branch)
    return evaluate_word(rep, longitude_word(knot)).trace()


def _newton_u(knot, s, u0, prec, cfg):
    """Newton in u at fixed s.  The stopping rule is relative to the
    evaluation scale of phi: the absolute floor eps*scale is what double
    precision can reach near a simple root."""
    u = u0
    for _ in range(cfg.max_newton_iter):
        phi, scale = _dual_phi(knot, s, u, prec)
        resid = abs(phi.val)
        if float(resid) <= cfg.newton_tol * scale:
            return u, float(resid)
        if abs(phi.du) < cfg.singular_tol:
            raise SingularPoint(
                f"|dphi/du| = {float(abs(phi.du)):.3e} below {cfg.singular_tol:.1e} at s={s!r}"
            )
        u = u - phi.val / phi.du
        if abs(u - u0) > 10 * (1 + abs(u0)):
            raise NewtonDivergence(f"iterate ran away from seed {u0!r} at s={s!r}")
    raise NewtonDivergence(
        f"no convergence in {cfg.max_newton_iter} iterations at s={s!r}"
    )


def continue_riley_curve(knot, kprime, h, prec=DOUBLE, cfg=LimitConfig(), seed=None):
    """Solve phi(-1+h, u) = 0 near the metabelian point u_{k'}.

    Checks smoothness |dphi/du| at the seed point (-1, u_{k'}) first; h = 0
    returns the metabelian point itself.
    """
    u_meta = metabelian_u(knot.p, kprime, prec)
    val0, du0, _ = riley_residual(knot, -1.0, u_meta, prec)
    if abs(du0) < cfg.singular_tol:
        raise SingularPoint(
            f"curve through u_{kprime} of {knot.label} is singular: "
            f"|dphi/du| = {float(abs(du0)):.3e}"
        )
    if h == 0:
        return RileyPoint(-1.0, u_meta, float(abs(val0)))
    u0 = u_meta if seed is None else seed
    u, resid = _newton_u(knot, -1.0 + h, u0, prec, cfg)
    return RileyPoint(-1.0 + h, u, resid)


def _solve_grid(knot, kprime, hs, prec, cfg):
    """Points at every h in ascending order, each seeded from the previous.

    At the smallest h the solution must sit closer to u_{k'} than to any
    other metabelian root; landing elsewhere means the branches were not
    separated at this step size."""
    pts = {}
    seed = None
    for h in hs:
        pt = continue_riley_curve(knot, kprime, h, prec, cfg, seed=seed)
        pts[h] = pt
        seed = pt.u
    half = (knot.p - 1) // 2
    u_first = pts[hs[0]].u
    dists = [abs(u_first - metabelian_u(knot.p, j, prec)) for j in range(1, half + 1)]
    if min(range(half), key=lambda j: dists[j]) != kprime - 1:
        raise RootCollision(
            f"root at h={hs[0]:.2e} is nearer to a different metabelian point"
        )
    return pts


def _i_mu_hat_parts(h):
    """(i_mu_hat - 2, i_mu_hat + 2) at s = -1 + h, via the cancellation-free
    closed forms (s-1)^2/s and (s+1)^2/s."""
    s = -1.0 + h
    return (s - 1.0) ** 2 / s, h * h / s


def _curve_traces(knot, kprime, prec, cfg):
    """Solve the full h-grid (base levels plus finite-difference companions)
    and collect longitude traces.  Halves h0 and retries on branch trouble;
    below min_h0 the roots are reported as colliding."""
    h0 = cfg.h0
    while True:
        base = [h0 / cfg.step_ratio ** j for j in range(cfg.levels - 1, -1, -1)]
        fd = []
        for h in base:
            fd.extend((h * (1 - cfg.fd_fraction), h * (1 + cfg.fd_fraction)))
        all_h = sorted(set(base) | set(fd))
        try:
            pts = _solve_grid(knot, kprime, all_h, prec, cfg)
            break
        except (NewtonDivergence, RootCollision):
            h0 /= 2
            if h0 < cfg.min_h0:
                raise RootCollision(
                    f"could not separate Riley roots above h = {cfg.min_h0:.1e} "
                    f"for {knot.label}, k' = {kprime}"
                )
    traces = {}
    for h, pt in pts.items():
        traces[h] = trace_longitude(knot, pt.s, pt.u, prec)
    max_resid = max(pt.residual for pt in pts.values())
    return base, traces, max_resid, h0


def evaluate_F(knot, kprime, cfg=LimitConfig(), prec=DOUBLE):
    """The rational function (I_lam^2-4)/(I_muhat^2-4) * (dI_muhat/dI_lam)^2
    at the metabelian character chi_{rho_{k'}}, by two independent limits.

    (a) ratio estimate: F = lim -(I_muhat + 2)/(I_lam - 2) along the curve;
    (b) direct estimate of the defining expression with dI_lam/dI_muhat by
        centered finite differences along the curve.
    Both are Richardson-extrapolated over the geometric h-grid; (a) is the
    value of record and a disagreement beyond cross_tol raises.
    """
    base, traces, max_resid, h0 = _curve_traces(knot, kprime, prec, cfg)

    ratio_samples = []
    direct_samples = []
    for h in base:
        minus2, plus2 = _i_mu_hat_parts(h)
        lam = traces[h]
        ratio_samples.append((h, -plus2 / (lam - 2.0)))

        hm, hp = h * (1 - cfg.fd_fraction), h * (1 + cfg.fd_fraction)
        d_mu_hat = _i_mu_hat_parts(hp)[1] - _i_mu_hat_parts(hm)[1]
        d_lam = traces[hp] - traces[hm]
        dmu_dlam = d_mu_hat / d_lam
        lam_sq_m4 = (lam - 2.0) * (lam + 2.0)
        mu_sq_m4 = minus2 * plus2
        direct_samples.append((h, lam_sq_m4 / mu_sq_m4 * dmu_dlam * dmu_dlam))

    value, err = richardson_limit(ratio_samples, ratio=cfg.step_ratio)
    direct, derr = richardson_limit(direct_samples, ratio=cfg.step_ratio)
    rel = float(abs(value - direct) / max(abs(value), abs(direct), 1e-300))
    est = FEstimate(
        value=value,
        direct=direct,
        rel_disagreement=rel,
        error_estimate=err,
        direct_error_estimate=derr,
        max_residual=max_resid,
        h0_used=h0,
        diagnostics={"samples": len(base)},
    )
    if rel > cfg.cross_tol:
        exc = EstimateDisagreement(
            f"F estimates disagree by {rel:.3e} (> {cfg.cross_tol:.1e}) for "
            f"{knot.label}, k' = {kprime}: ratio {value!r} vs direct {direct!r}",
            ratio_value=value,
            direct_value=direct,
        )
        exc.estimate = est
        raise exc
    return est


def trace_samples(knot, kprime, cfg=LimitConfig(), prec=DOUBLE):
    """(h, TraceSample) rows along the continuation grid, smallest h first;
    as h -> 0 the samples approach the metabelian values (-2, 2)."""
    base, traces, _, _ = _curve_traces(knot, kprime, prec, cfg)
    rows = []
    for h in base:
        _, plus2 = _i_mu_hat_parts(h)
        rows.append((h, TraceSample(i_mu_hat=plus2 - 2.0, i_lambda=traces[h])))
    return rows


def fitted_local_form(knot, kprime, cfg=LimitConfig(), prec=DOUBLE):
    """H_hat(-2) where I_lam - 2 = -(I_muhat + 2) * H_hat(I_muhat) locally;
    equals 1/F and for the figure-eight knot comes out 5."""
    base, traces, _, _ = _curve_traces(knot, kprime, prec, cfg)
    samples = []
    for h in base:
        _, plus2 = _i_mu_hat_parts(h)
        samples.append((h, -(traces[h] - 2.0) / plus2))
    value, _ = richardson_limit(samples, ratio=cfg.step_ratio)
    return value


def double_zero_profile(knot, kprime, cfg=LimitConfig(), prec=DOUBLE):
    """(h, I_lam - 2, (I_lam - 2)/(I_muhat + 2)) rows along the curve; the
    second column tends to 0 while the third converges to a nonzero limit,
    the executable form of the double zero of I_lam - 2 at the metabelian
    point."""
    base, traces, _, _ = _curve_traces(knot, kprime, prec, cfg)
    rows = []
    for h in base:
        _, plus2 = _i_mu_hat_parts(h)
        lam = traces[h]
        rows.append((h, lam - 2.0, (lam - 2.0) / plus2))
    return rows
