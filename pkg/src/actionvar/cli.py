"""Command-line surface: comparison tables, frequency reports, spectra CSV.

Four subcommands:

  table1   classical relativistic action from four schemes vs quadrature
  table2   quantum level corrections from four schemes vs diagonalization
  freq     weak-relativistic frequency from formula, dJ/dE, and trajectory
  levels   spectrum of one scheme as CSV, with an oracle column

Configuration comes from defaults, then an optional flat key=value config
file, then command-line flags (later wins).  The ACTIONVAR_TOL environment
variable overrides the relative tolerance used to flag deviations.
Exit codes: 0 success, 1 usage/config error, 2 oracle convergence failure,
3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, field

from .classical import (
    action_fullrel,
    action_quadrature,
    action_wr_pdx,
    action_wr_xdp_first_order,
    frequency_from_action,
    frequency_wr_closed,
)
from .core import (
    ActionVarError,
    BasisNotConverged,
    ConfigInvalid,
    EigensolverStalled,
    EnergyDriftExceeded,
    IoFailure,
    NoPeriodFound,
    OscillatorParams,
    QuadratureNotConverged,
    SchemeTag,
    UnknownScheme,
    energy_point,
    make_params,
)
from .oracles import (
    HamiltonianKind,
    HamiltonianSpec,
    diagonalize,
    jwkb_levels_wr,
    rk4_period,
    rs_shift_p4,
)
from .quantum import eigenvalues_aho, eigenvalues_wr_pdx, eigenvalues_wr_xdp

__all__ = ["RunConfig", "main", "cmd_table1", "cmd_table2", "cmd_frequency", "cmd_levels"]

_CONVERGENCE_ERRORS = (
    QuadratureNotConverged,
    EnergyDriftExceeded,
    NoPeriodFound,
    BasisNotConverged,
    EigensolverStalled,
)

_DEFAULT_TOL = 1e-3

_SCHEME_NOTES = {
    "fullrel_pdx": (SchemeTag.CLASSICAL_FULLREL_PDX, "tabulated series in eps/(2+eps), coordinate contour"),
    "fullrel_xdp": (SchemeTag.CLASSICAL_FULLREL_XDP, "tabulated series in eps, momentum contour"),
    "weakrel_pdx": (SchemeTag.CLASSICAL_WR_PDX, "(e/omega0)(1 + 3 eps/16)"),
    "weakrel_xdp": (SchemeTag.CLASSICAL_WR_XDP, "exact prefactor times branch-ratio series"),
    "quadrature": (SchemeTag.CLASSICAL_FULLREL_PDX, "Gauss-Legendre contour integral oracle"),
    "wr-pdx": (SchemeTag.QUANTUM_WR_PDX, "coordinate-form first-order spectrum"),
    "wr-xdp": (SchemeTag.QUANTUM_WR_XDP, "momentum-form first-order spectrum"),
    "jwkb": (SchemeTag.JWKB_WR, "semiclassical discretization of the classical action"),
    "rs": (SchemeTag.RAYLEIGH_SCHRODINGER, "first-order expectation value of the p^4 term"),
    "sho": (SchemeTag.QUANTUM_SHO_PDX, "harmonic spectrum (n + 1/2) hbar omega0"),
    "aho": (SchemeTag.QUANTUM_AHO_PDX, "quartic-anharmonic first-order spectrum"),
    "diag": (SchemeTag.QUANTUM_WR_PDX, "ladder-basis diagonalization oracle"),
}


@dataclass
class RunConfig:
    """Resolved settings for one CLI run."""

    params: OscillatorParams
    epsilon_list: list[float] = field(default_factory=lambda: [0.01, 0.05, 0.1])
    level_ratio: float = 0.01
    n_max: int = 10
    delta: float = 0.0
    output_path: str | None = None
    format: str = "table"
    show_scheme: bool = False
    tolerance: float = _DEFAULT_TOL

    def __post_init__(self) -> None:
        for eps in self.epsilon_list:
            if not 0.0 <= eps < 0.5:
                raise ConfigInvalid(f"eps values must lie in [0, 1/2), got {eps}")
        if self.n_max < 0:
            raise ConfigInvalid(f"nmax must be >= 0, got {self.n_max}")
        if self.level_ratio < 0:
            raise ConfigInvalid(f"ratio must be >= 0, got {self.level_ratio}")

    def ratio_params(self) -> OscillatorParams:
        """Params whose hbar*omega0/mc^2 equals level_ratio (c adjusted)."""
        p = self.params
        if self.level_ratio == 0:
            return make_params(p.m, p.k, 1e9, p.hbar)
        c = math.sqrt(p.hbar * p.omega0 / (self.level_ratio * p.m))
        return make_params(p.m, p.k, c, p.hbar)


def _fmt(value: float | None) -> str:
    if value is None:
        return ""
    return format(float(value), ".12g")


def _emit(rows: list[list], header: list[str], config: RunConfig) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if not isinstance(v, str) else v for v in row))
    text = "\n".join(lines) + "\n"
    if config.output_path:
        try:
            with open(config.output_path, "w", encoding="ascii") as fh:
                fh.write(text)
        except OSError as exc:
            raise IoFailure(f"cannot write {config.output_path}: {exc}") from exc
    if config.format == "csv" or not config.output_path:
        widths = [max(len(h), 14) for h in header]
        print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
        for row in rows:
            cells = [_fmt(v) if not isinstance(v, str) else v for v in row]
            print("  ".join(c.ljust(w) for c, w in zip(cells, widths)))


def _print_scheme_notes(columns: list[str]) -> None:
    print("# column schemes:")
    for name in columns:
        if name in _SCHEME_NOTES:
            tag, note = _SCHEME_NOTES[name]
            print(f"#   {name}: {tag.value} -- {note}")
    print()


def cmd_table1(config: RunConfig) -> int:
    """Classical relativistic action, four schemes plus quadrature oracle."""
    header = [
        "eps",
        "fullrel_pdx",
        "fullrel_xdp",
        "weakrel_pdx",
        "weakrel_xdp",
        "quadrature",
        "max_pairwise_dev",
    ]
    if config.show_scheme:
        _print_scheme_notes(header[1:6])
    p = config.params
    rows = []
    for eps in config.epsilon_list:
        if eps == 0.0:
            rows.append([eps, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0])
            continue
        e = eps * p.rest_energy
        ep = energy_point(p, e)
        unit = e / p.omega0
        vals = [
            action_fullrel(p, ep, SchemeTag.CLASSICAL_FULLREL_PDX).j_value / unit,
            action_fullrel(p, ep, SchemeTag.CLASSICAL_FULLREL_XDP).j_value / unit,
            action_wr_pdx(p, ep).j_value / unit,
            action_wr_xdp_first_order(p, ep).j_value / unit,
        ]
        oracle = action_quadrature(HamiltonianSpec(HamiltonianKind.FULL_REL, p), e) / unit
        spread = max(vals + [oracle]) - min(vals + [oracle])
        rows.append([eps, *vals, oracle, spread])
    _emit(rows, header, config)
    return 0


def cmd_table2(config: RunConfig) -> int:
    """Quantum level corrections, four schemes plus diagonalization oracle.

    All correction columns are in units of hbar*omega0.
    """
    header = ["n", "wr-pdx", "wr-xdp", "jwkb", "rs", "diag", "max_dev_from_diag"]
    if config.show_scheme:
        _print_scheme_notes(header[1:6])
    p = config.ratio_params()
    hw = p.hbar * p.omega0
    n_max = config.n_max
    diag_shift = _diag_shifts(HamiltonianSpec(HamiltonianKind.WEAK_REL, p), n_max, hw)
    rows = []
    for n in range(n_max + 1):
        vals = [
            eigenvalues_wr_pdx(p, n).correction / hw,
            eigenvalues_wr_xdp(p, n).correction / hw,
            jwkb_levels_wr(p, n).correction / hw,
            rs_shift_p4(p, n) / hw,
        ]
        oracle = diag_shift[n]
        rows.append([n, *vals, oracle, max(abs(v - oracle) for v in vals)])
    _emit(rows, header, config)
    return 0


def _diag_shifts(spec: HamiltonianSpec, n_max: int, hw: float) -> list[float]:
    basis = 32
    while basis < 4 * (n_max + 1):
        basis *= 2
    eigs = diagonalize(spec, basis, n_levels=n_max + 1)
    return [(eigs[n] - (n + 0.5) * hw) / hw for n in range(n_max + 1)]


def cmd_frequency(config: RunConfig) -> int:
    """Weak-relativistic frequency: closed form, dJ/dE, and trajectory."""
    header = ["eps", "omega_closed", "omega_djde", "omega_rk4", "shift_over_eps"]
    p = config.params
    w0 = p.omega0
    rows = []
    for eps in config.epsilon_list:
        if eps == 0.0:
            rows.append([eps, w0, w0, w0, 3.0 / 8.0])
            continue
        e = eps * p.rest_energy
        ep = energy_point(p, e)
        spec = HamiltonianSpec(HamiltonianKind.WEAK_REL, p)
        closed = frequency_wr_closed(p, ep)
        djde = frequency_from_action(lambda en: action_quadrature(spec, en), e)
        rk4 = 2.0 * math.pi / rk4_period(spec, e)
        shift = (w0 / rk4 - 1.0) / eps
        rows.append([eps, closed, djde, rk4, shift])
    _emit(rows, header, config)
    return 0


def _spectrum_rows(scheme: str, config: RunConfig) -> tuple[list[list], list[str]]:
    p = config.ratio_params()
    hw = p.hbar * p.omega0
    n_max = config.n_max
    entries: list[tuple[int, float, float]] = []
    oracle_spec: HamiltonianSpec | None = None
    if scheme == "sho":
        entries = [(n, (n + 0.5) * hw, 0.0) for n in range(n_max + 1)]
    elif scheme == "wr-pdx":
        entries = [
            (n, ev.energy, ev.correction)
            for n, ev in ((n, eigenvalues_wr_pdx(p, n)) for n in range(n_max + 1))
        ]
        oracle_spec = HamiltonianSpec(HamiltonianKind.WEAK_REL, p)
    elif scheme == "wr-xdp":
        entries = [
            (n, ev.energy, ev.correction)
            for n, ev in ((n, eigenvalues_wr_xdp(p, n)) for n in range(n_max + 1))
        ]
        oracle_spec = HamiltonianSpec(HamiltonianKind.WEAK_REL, p)
    elif scheme == "jwkb":
        entries = [
            (n, ev.energy, ev.correction)
            for n, ev in ((n, jwkb_levels_wr(p, n)) for n in range(n_max + 1))
        ]
        oracle_spec = HamiltonianSpec(HamiltonianKind.WEAK_REL, p)
    elif scheme == "rs":
        entries = [
            (n, (n + 0.5) * hw + rs_shift_p4(p, n), rs_shift_p4(p, n))
            for n in range(n_max + 1)
        ]
        oracle_spec = HamiltonianSpec(HamiltonianKind.WEAK_REL, p)
    elif scheme == "aho":
        base = config.params
        entries = [
            (n, ev.energy, ev.correction)
            for n, ev in (
                (n, eigenvalues_aho(base, config.delta, n)) for n in range(n_max + 1)
            )
        ]
        oracle_spec = HamiltonianSpec(HamiltonianKind.QUARTIC_AHO, base, delta=config.delta)
        hw = base.hbar * base.omega0
    else:
        raise UnknownScheme(f"no spectrum scheme named {scheme!r}")

    header = ["n", "energy", "correction", "oracle_energy", "rel_diff", "ok"]
    rows: list[list] = []
    oracle_energy: list[float] | None = None
    if scheme == "sho":
        oracle_energy = [(n + 0.5) * hw for n in range(n_max + 1)]
    elif oracle_spec is not None:
        shifts = _diag_shifts(oracle_spec, n_max, hw)
        oracle_energy = [(n + 0.5) * hw + shifts[n] * hw for n in range(n_max + 1)]
    for n, energy, correction in entries:
        if oracle_energy is None:
            rows.append([n, energy, correction, "", "", ""])
        else:
            oe = oracle_energy[n]
            rel = abs(energy - oe) / max(abs(oe), 1e-300)
            rows.append([n, energy, correction, oe, rel, str(rel <= config.tolerance)])
    return rows, header


def cmd_levels(scheme: str, config: RunConfig) -> int:
    """Spectrum of one scheme with an oracle column where available."""
    if config.show_scheme and scheme in _SCHEME_NOTES:
        _print_scheme_notes([scheme, "diag"])
    rows, header = _spectrum_rows(scheme, config)
    _emit(rows, header, config)
    return 0


# -- configuration plumbing ---------------------------------------------------


def _parse_units(text: str) -> dict[str, float]:
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise ConfigInvalid(f"units entry {item!r} is not key=value")
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in ("m", "k", "hbar", "c"):
            raise ConfigInvalid(f"unknown unit key {key!r}")
        try:
            out[key] = float(value)
        except ValueError as exc:
            raise ConfigInvalid(f"bad unit value in {item!r}") from exc
    return out


def _read_config_file(path: str) -> dict[str, str]:
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigInvalid(f"{path}:{line_no}: expected key = value")
                key, _, value = line.partition("=")
                out[key.strip()] = value.strip()
    except OSError as exc:
        raise IoFailure(f"cannot read config {path}: {exc}") from exc
    return out


def _build_config(args: argparse.Namespace) -> RunConfig:
    settings: dict[str, str] = {}
    if args.config:
        settings = _read_config_file(args.config)

    def pick(name: str, flag_value):
        if flag_value is not None:
            return flag_value
        return settings.get(name)

    units = {"m": 1.0, "k": 1.0, "hbar": 1.0, "c": 10.0}
    units_text = pick("units", args.units)
    if units_text:
        units.update(_parse_units(units_text))
    params = make_params(units["m"], units["k"], units["c"], units["hbar"])

    eps_text = pick("eps", getattr(args, "eps", None))
    if eps_text:
        try:
            eps_list = [float(v) for v in str(eps_text).split(",") if v.strip()]
        except ValueError as exc:
            raise ConfigInvalid(f"bad eps list {eps_text!r}") from exc
    else:
        eps_list = [0.01, 0.05, 0.1]

    def pick_float(name: str, flag_value, default: float) -> float:
        raw = pick(name, flag_value)
        if raw is None:
            return default
        try:
            return float(raw)
        except (TypeError, ValueError) as exc:
            raise ConfigInvalid(f"bad value for {name}: {raw!r}") from exc

    def pick_int(name: str, flag_value, default: int) -> int:
        raw = pick(name, flag_value)
        if raw is None:
            return default
        try:
            return int(raw)
        except (TypeError, ValueError) as exc:
            raise ConfigInvalid(f"bad value for {name}: {raw!r}") from exc

    tol = _DEFAULT_TOL
    env_tol = os.environ.get("ACTIONVAR_TOL")
    if env_tol:
        try:
            tol = float(env_tol)
        except ValueError as exc:
            raise ConfigInvalid(f"bad ACTIONVAR_TOL {env_tol!r}") from exc

    return RunConfig(
        params=params,
        epsilon_list=eps_list,
        level_ratio=pick_float("ratio", getattr(args, "ratio", None), 0.01),
        n_max=pick_int("nmax", getattr(args, "nmax", None), 10),
        delta=pick_float("delta", getattr(args, "delta", None), 0.0),
        output_path=pick("csv", args.csv),
        format="csv" if pick("csv", args.csv) else "table",
        show_scheme=bool(args.show_scheme),
        tolerance=tol,
    )


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 1 on usage errors, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="actionvar", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="flat key = value config file")
        sp.add_argument("--units", help="comma list like m=1,k=1,hbar=1,c=10")
        sp.add_argument("--csv", help="write CSV to this path")
        sp.add_argument("--show-scheme", action="store_true", help="print per-column scheme tags")

    sp = sub.add_parser("table1", parents=[], help="classical action comparison")
    sp.add_argument("--eps", help="comma list of eps values")
    common(sp)

    sp = sub.add_parser("table2", help="quantum correction comparison")
    sp.add_argument("--ratio", type=float, help="hbar*omega0 / m c^2")
    sp.add_argument("--nmax", type=int, help="highest quantum number")
    common(sp)

    sp = sub.add_parser("freq", help="weak-relativistic frequency report")
    sp.add_argument("--eps", help="comma list of eps values")
    common(sp)

    sp = sub.add_parser("levels", help="spectrum CSV for one scheme")
    sp.add_argument("--scheme", required=True, choices=["sho", "wr-pdx", "wr-xdp", "jwkb", "rs", "aho"])
    sp.add_argument("--ratio", type=float, help="hbar*omega0 / m c^2")
    sp.add_argument("--nmax", type=int, help="highest quantum number")
    sp.add_argument("--delta", type=float, help="quartic strength (aho scheme)")
    common(sp)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _make_parser()
    args = parser.parse_args(argv)
    try:
        config = _build_config(args)
        if args.command == "table1":
            return cmd_table1(config)
        if args.command == "table2":
            return cmd_table2(config)
        if args.command == "freq":
            return cmd_frequency(config)
        if args.command == "levels":
            return cmd_levels(args.scheme, config)
        raise ConfigInvalid(f"unknown command {args.command!r}")
    except (ConfigInvalid, UnknownScheme) as exc:
        print(f"actionvar: config error: {exc}", file=sys.stderr)
        return 1
    except _CONVERGENCE_ERRORS as exc:
        print(f"actionvar: oracle convergence failure: {exc}", file=sys.stderr)
        return 2
    except IoFailure as exc:
        print(f"actionvar: I/O error: {exc}", file=sys.stderr)
        return 3
    except ActionVarError as exc:
        print(f"actionvar: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
