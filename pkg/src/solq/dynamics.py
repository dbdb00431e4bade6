"""Two-qubit dissipative dynamics in the shared phonon reservoir.

Master equation in the frame rotating at the drive frequency:

    drho/dt = -i[H, rho] + sum_ij G_ij (sm_j rho sp_i - 1/2 {sp_i sm_j, rho})

with the collective rate matrix G = [[gamma, Gamma], [Gamma, gamma]] and

    H = eta (sp_1 sm_2 + sp_2 sm_1) - (Omega/2) sum_i (sp_i + sm_i)
        + delta sum_i sp_i sm_i.

Everything here is expressed in units of the single-site rate gamma: times are
in 1/gamma, the Rabi frequency and detuning in gamma, and the collective
parameters enter as the ratios Gamma/gamma and eta/gamma carried by a RateSet.

Basis conventions. Product (computational) order: ee, eg, ge, gg. Dicke order:
e, s, a, g with |s>, |a> = (|e1 g2> +- |g1 e2>)/sqrt(2). The transform between
them is real, symmetric, and involutory.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import solve_ivp

from .couplings import RateSet

HERM_TOL = 1e-10
TRACE_TOL = 1e-10
EIG_FLOOR = -1e-9


class Basis(Enum):
    COMPUTATIONAL = "computational"
    DICKE = "dicke"


PRODUCT_LABELS = ("ee", "eg", "ge", "gg")
DICKE_LABELS = ("e", "s", "a", "g")

_S = 1.0 / math.sqrt(2.0)
# maps product-order vectors to Dicke order; its own inverse
_U_DICKE = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, _S, _S, 0.0],
        [0.0, _S, -_S, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]
)


@dataclass(frozen=True)
class DensityMatrix4:
    """A validated 4x4 density matrix tagged with its basis."""

    matrix: np.ndarray
    basis: Basis = Basis.COMPUTATIONAL

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        object.__setattr__(self, "matrix", m)
        herm = np.max(np.abs(m - m.conj().T))
        if herm > HERM_TOL:
            raise ValueError(f"matrix is not Hermitian (deviation {herm:.2e})")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace is {tr!r}, not 1")
        eigs = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
        if eigs.min() < EIG_FLOOR:
            raise ValueError(f"negative eigenvalue {eigs.min():.2e}")

    def element(self, row_label: str, col_label: str) -> complex:
        labels = PRODUCT_LABELS if self.basis is Basis.COMPUTATIONAL else DICKE_LABELS
        return complex(self.matrix[labels.index(row_label), labels.index(col_label)])


def basis_state(label: str) -> DensityMatrix4:
    """Pure-state density matrix for a product or Dicke basis label."""
    label = label.lower()
    if label in PRODUCT_LABELS:
        idx, basis = PRODUCT_LABELS.index(label), Basis.COMPUTATIONAL
    elif label in DICKE_LABELS:
        idx, basis = DICKE_LABELS.index(label), Basis.DICKE
    else:
        raise ValueError(f"unknown state label {label!r}")
    m = np.zeros((4, 4), dtype=complex)
    m[idx, idx] = 1.0
    return DensityMatrix4(matrix=m, basis=basis)


def dicke_transform(state: DensityMatrix4) -> DensityMatrix4:
    """Flip a state between the product and Dicke bases (involutory)."""
    rho = _U_DICKE @ state.matrix @ _U_DICKE
    other = Basis.DICKE if state.basis is Basis.COMPUTATIONAL else Basis.COMPUTATIONAL
    return DensityMatrix4(matrix=rho, basis=other)


def _as_product_matrix(state: DensityMatrix4) -> np.ndarray:
    if state.basis is Basis.COMPUTATIONAL:
        return state.matrix
    return _U_DICKE @ state.matrix @ _U_DICKE


@dataclass(frozen=True)
class DriveParams:
    """Continuous drive: Rabi frequency (units of gamma), optional detuning.

    omega_rabi_2 = None means symmetric pumping (the same amplitude on both
    qubits), which is the only case the closed-form steady state covers.
    """

    omega_rabi: float = 0.0
    detuning: float = 0.0
    omega_rabi_2: float | None = None

    @property
    def symmetric(self) -> bool:
        return self.omega_rabi_2 is None or self.omega_rabi_2 == self.omega_rabi


# site lowering operators in the product basis
_SM1 = np.zeros((4, 4)); _SM1[2, 0] = 1.0; _SM1[3, 1] = 1.0
_SM2 = np.zeros((4, 4)); _SM2[1, 0] = 1.0; _SM2[3, 2] = 1.0
_SP1, _SP2 = _SM1.T.copy(), _SM2.T.copy()


def _check_rates(rates: RateSet):
    if abs(rates.Gamma_over_gamma) > 1.0 + 1e-9:
        raise ValueError(
            f"|Gamma/gamma| = {abs(rates.Gamma_over_gamma)} > 1: "
            "the rate matrix is not positive semidefinite"
        )


def _hamiltonian(rates: RateSet, drive: DriveParams | None) -> np.ndarray:
    eta = rates.eta_over_gamma
    h = eta * (_SP1 @ _SM2 + _SP2 @ _SM1)
    if drive is not None:
        om1 = drive.omega_rabi
        om2 = om1 if drive.omega_rabi_2 is None else drive.omega_rabi_2
        h = h - 0.5 * (om1 * (_SP1 + _SM1) + om2 * (_SP2 + _SM2))
        if drive.detuning != 0.0:
            h = h + drive.detuning * (_SP1 @ _SM1 + _SP2 @ _SM2)
    return h


def _apply_product(rho: np.ndarray, rates: RateSet, drive: DriveParams | None):
    big = rates.Gamma_over_gamma
    gmat = np.array([[1.0, big], [big, 1.0]])
    sm = (_SM1, _SM2)
    sp = (_SP1, _SP2)
    h = _hamiltonian(rates, drive)
    out = -1j * (h @ rho - rho @ h)
    for i in range(2):
        for j in range(2):
            g = gmat[i, j]
            anti = sp[i] @ sm[j]
            out = out + g * (sm[j] @ rho @ sp[i] - 0.5 * (anti @ rho + rho @ anti))
    return out


def liouvillian_apply(
    state: DensityMatrix4, rates: RateSet, drive: DriveParams | None = None
) -> np.ndarray:
    """Right-hand side drho/dt for the given state, in the state's basis.

    Returned in units of gamma (so the diagonal decay of |e><e| is -2).
    """
    _check_rates(rates)
    rho = _as_product_matrix(state)
    out = _apply_product(rho, rates, drive)
    if state.basis is Basis.DICKE:
        out = _U_DICKE @ out @ _U_DICKE
    return out


def build_liouvillian(rates: RateSet, drive: DriveParams | None = None) -> np.ndarray:
    """Dense 16x16 generator in the product basis, column by column."""
    _check_rates(rates)
    lop = np.empty((16, 16), dtype=complex)
    for col in range(16):
        basis_mat = np.zeros((4, 4), dtype=complex)
        basis_mat[col // 4, col % 4] = 1.0
        lop[:, col] = _apply_product(basis_mat, rates, drive).ravel()
    return lop


@dataclass(frozen=True)
class Trajectory:
    """Snapshots of an evolution, times in units of 1/gamma."""

    times: np.ndarray
    states: tuple

    def __iter__(self):
        return iter(self.states)


def evolve(
    state0: DensityMatrix4,
    rates: RateSet,
    t_grid,
    drive: DriveParams | None = None,
    rtol: float = 1e-10,
    atol: float = 1e-12,
) -> Trajectory:
    """Integrate the master equation with an adaptive Runge-Kutta scheme.

    Snapshots are hermitized (the generator preserves Hermiticity; the solver
    leaves float-level asymmetry) but the trace is left untouched so that
    trace drift stays measurable. Each snapshot is validated on construction.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) < 2:
        raise ValueError("t_grid must be a 1-d array with at least two times")
    lop = build_liouvillian(rates, drive)
    rho0 = _as_product_matrix(state0).ravel()

    sol = solve_ivp(
        lambda t, y: lop @ y,
        (t_grid[0], t_grid[-1]),
        rho0,
        t_eval=t_grid,
        method="DOP853",
        rtol=rtol,
        atol=atol,
    )
    if not sol.success:
        raise RuntimeError(f"integration failed: {sol.message}")
    states = []
    for col in sol.y.T:
        rho = col.reshape(4, 4)
        rho = 0.5 * (rho + rho.conj().T)
        if state0.basis is Basis.DICKE:
            rho = _U_DICKE @ rho @ _U_DICKE
        states.append(DensityMatrix4(matrix=rho, basis=state0.basis))
    return Trajectory(times=t_grid, states=tuple(states))


def _expm1_over_x(x):
    """(e^x - 1)/x, series-guarded at small |x|."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-8
    safe = np.where(small, 1.0, x)
    return np.where(small, 1.0 + 0.5 * x + x * x / 6.0, np.expm1(safe) / safe)


def analytic_undriven(init: dict, rates: RateSet, times) -> Trajectory:
    """Closed-form decay of the Dicke populations and the s-a coherence.

    init supplies rho_ee, rho_ss, rho_aa (real) and rho_sa (complex); the
    ground population is fixed by the trace. Valid for states with no other
    nonzero elements and no drive. The superradiant channel feeds |s> at rate
    gamma + Gamma and |a> at gamma - Gamma; the degenerate point Gamma = gamma
    is handled by a series limit.
    """
    _check_rates(rates)
    allowed = {"rho_ee", "rho_ss", "rho_aa", "rho_sa"}
    unknown = set(init) - allowed
    if unknown:
        raise ValueError(f"unsupported initial elements: {sorted(unknown)}")
    ee0 = float(init.get("rho_ee", 0.0))
    ss0 = float(init.get("rho_ss", 0.0))
    aa0 = float(init.get("rho_aa", 0.0))
    sa0 = complex(init.get("rho_sa", 0.0))
    gg0 = 1.0 - ee0 - ss0 - aa0
    if gg0 < -1e-12:
        raise ValueError("initial populations exceed 1")

    big = rates.Gamma_over_gamma
    eta = rates.eta_over_gamma
    times = np.asarray(times, dtype=float)
    up = 1.0 + big   # superradiant rate, units of gamma
    dn = 1.0 - big   # subradiant rate

    ee = ee0 * np.exp(-2.0 * times)
    feed_ss = up * times * _expm1_over_x(dn * times) * np.exp(-2.0 * times) * ee0
    feed_aa = dn * times * _expm1_over_x(up * times) * np.exp(-2.0 * times) * ee0
    ss = ss0 * np.exp(-up * times) + feed_ss
    aa = aa0 * np.exp(-dn * times) + feed_aa
    sa = sa0 * np.exp(-(1.0 + 2.0j * eta) * times)
    gg = 1.0 - ee - ss - aa

    states = []
    for i in range(len(times)):
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0], m[1, 1], m[2, 2], m[3, 3] = ee[i], ss[i], aa[i], gg[i]
        m[1, 2], m[2, 1] = sa[i], np.conj(sa[i])
        states.append(DensityMatrix4(matrix=m, basis=Basis.DICKE))
    return Trajectory(times=times, states=tuple(states))


@dataclass(frozen=True)
class SteadyStateResult:
    state: DensityMatrix4
    residual: float
    unique: bool


def steady_state(rates: RateSet, drive: DriveParams | None = None) -> SteadyStateResult:
    """Null-space steady state of the generator, by dense SVD.

    The smallest singular value must vanish (< 1e-12 relative); if the second
    smallest also sinks below 1e-6 the steady state is degenerate (the
    undriven Gamma = gamma point) and the result is flagged non-unique.
    """
    lop = build_liouvillian(rates, drive)
    _, s, vh = np.linalg.svd(lop)
    scale = s[0] if s[0] > 0 else 1.0
    if s[-1] / scale > 1e-12:
        raise RuntimeError(
            f"no steady state found (smallest singular value {s[-1]:.2e})"
        )
    unique = s[-2] / scale > 1e-6
    rho = vh[-1].conj().reshape(4, 4)
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    residual = float(np.max(np.abs((lop @ rho.ravel()).reshape(4, 4))))
    state = DensityMatrix4(matrix=rho, basis=Basis.COMPUTATIONAL)
    return SteadyStateResult(state=state, residual=residual, unique=unique)


def steady_state_closed_form(rates: RateSet, drive: DriveParams) -> DensityMatrix4:
    """Symmetrically driven steady state in closed form (Dicke basis).

    Valid for symmetric resonant pumping only. The s-g coherence carries
    gamma (gamma + Gamma - 2 i eta) + Omega^2 in its numerator; the sign of
    the eta term matters and is fixed by the generator's null space (the
    test suite pins it against the SVD route).
    """
    _check_rates(rates)
    if not drive.symmetric or drive.detuning != 0.0:
        raise ValueError("closed form requires symmetric resonant pumping")
    big = rates.Gamma_over_gamma
    eta = rates.eta_over_gamma
    om = drive.omega_rabi
    if om == 0.0:
        return basis_state("g")

    den = (1.0 + big) ** 2 + 4.0 * (eta * eta + om * om) + 4.0 * om ** 4
    ee = om ** 4 / den
    aa = om ** 4 / den
    ss = om ** 2 * (2.0 + om ** 2) / den
    gg = ((1.0 + big) ** 2 + 2.0 * (2.0 * eta * eta + om ** 2) + om ** 4) / den
    ge = -(1.0 + big + 2.0j * eta) * om ** 2 / den
    es = 1j * math.sqrt(2.0) * om ** 3 / den
    sg = 1j * math.sqrt(2.0) * om * ((1.0 + big - 2.0j * eta) + om ** 2) / den

    m = np.zeros((4, 4), dtype=complex)
    m[0, 0], m[1, 1], m[2, 2], m[3, 3] = ee, ss, aa, gg
    m[3, 0], m[0, 3] = ge, np.conj(ge)
    m[0, 1], m[1, 0] = es, np.conj(es)
    m[1, 3], m[3, 1] = sg, np.conj(sg)
    return DensityMatrix4(matrix=m, basis=Basis.DICKE)
