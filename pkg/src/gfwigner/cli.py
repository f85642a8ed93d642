"""Command line interface.

Subcommands: field, rays, mub, uomega, wigner, bell, qec, meanking, verify.
Exit codes: 0 success, 2 validation/usage error, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import apps
from .errors import GfwignerError
from .galois import GF2Field, field_new, power_ordering
from .net import (
    QuantumNet,
    all_plus_signs,
    build_net,
    mub_bases,
    net_from_json,
    u_omega_gates,
)
from .pauli import parse_pauli, to_matrix
from .phasespace import (
    BinaryPoint,
    all_striations,
    axis_index,
    grid_axis,
    to_binary,
)
from .wigner import (
    StabilizerGroup,
    WignerGrid,
    check_density_matrix,
    state_density,
    stabilizer_wigner,
    wigner_of,
)

# -- formatting helpers ----------------------------------------------------------


def _axis_names(field: GF2Field) -> list[str]:
    return ["0"] + ["1" if j == 0 else ("w" if j == 1 else f"w^{j}")
                    for j in range(field.order)]


def _fmt_value(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    return f"{float(v):.12g}"


def grid_rows(grid: WignerGrid) -> list[list]:
    """Grid as rows of values: rows are p descending, columns q ascending."""
    field = grid.field
    axis = grid_axis(field)
    rows = []
    for p in reversed(axis):
        row = []
        for q in axis:
            row.append(grid.values[(q, field.p_to_bits(p))])
        rows.append(row)
    return rows


def export_grid(grid: WignerGrid, fmt: str, meta: dict | None = None) -> str:
    """Render a Wigner grid as csv, json or ascii text."""
    field = grid.field
    names = _axis_names(field)
    rows = grid_rows(grid)
    if fmt == "csv":
        lines = ["p\\q," + ",".join(names)]
        for name, row in zip(reversed(names), rows):
            lines.append(name + "," + ",".join(_fmt_value(v) for v in row))
        return "\n".join(lines) + "\n"
    if fmt == "json":
        payload = {
            "n": field.n,
            "poly": field.bits_str(field.poly & (field.N - 1)) + "1",
            "exact": grid.exact,
            "axis": names,
            "rows_p_descending": [[_fmt_value(v) for v in row] for row in rows],
        }
        payload.update(meta or {})
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "ascii":
        width = max(len(_fmt_value(v)) for row in rows for v in row)
        label_w = max(len(s) for s in names)
        out = []
        for name, row in zip(reversed(names), rows):
            cells = []
            for v in row:
                shade = "#" if v > 0 else ("o" if v < 0 else ".")
                cells.append(f"{shade} {_fmt_value(v):>{width}}")
            out.append(f"{name:>{label_w}} | " + "  ".join(cells))
        out.append("-" * len(out[-1]))
        header = " " * label_w + " | " + "  ".join(f"  {s:>{width}}" for s in names)
        out.append(header)
        return "\n".join(out) + "\n"
    raise GfwignerError(f"unknown format {fmt!r}")


def import_grid(text: str) -> WignerGrid:
    """Inverse of export_grid(fmt='json')."""
    payload = json.loads(text)
    field = field_new(payload["n"], int(payload["poly"][::-1], 2))
    axis = grid_axis(field)
    values = {}
    exact = payload["exact"]
    for name_row, row in zip(reversed(axis), payload["rows_p_descending"]):
        for q, cell in zip(axis, row):
            val = Fraction(cell) if exact else float(cell)
            values[(q, field.p_to_bits(name_row))] = val
    return WignerGrid(field, values, exact=exact)


# -- net and state resolution ------------------------------------------------------


def resolve_net(field: GF2Field, spec: str) -> QuantumNet:
    """'default' (all +1, independent), 'covariant', or a JSON file path."""
    if spec == "default":
        return build_net(field)
    if spec == "covariant":
        return build_net(field, "covariant")
    with open(spec) as fh:
        net = net_from_json(fh.read())
    if net.field != field:
        raise GfwignerError("net file does not match the requested field")
    return net


def resolve_state(field: GF2Field, spec: str):
    """Resolve a state preset or file.

    Returns ('stabilizer', StabilizerGroup) or ('dense', density matrix).
    Presets: computational_<bits>, bell_{phi,psi}_{plus,minus},
    qec_logical_{0,1}, meanking_phi1.  Files: JSON with either
    {"stabilizer": [["+XXI", 1], ...]} or {"density": [[[re, im], ...], ...]}.
    """
    n = field.n
    if spec.startswith("computational_"):
        bits = field.parse_bits(spec.removeprefix("computational_"))
        zs = [
            (parse_pauli("+" + "".join("Z" if i == k else "I" for i in range(n))),
             -1 if bits >> k & 1 else 1)
            for k in range(n)
        ]
        return "stabilizer", StabilizerGroup.from_generators(field, zs)
    if spec.startswith(("bell_phi_", "bell_psi_")):
        if n != 2:
            raise GfwignerError("bell presets need --n 2")
        return "stabilizer", apps.bell_stabilizer(field, spec.removeprefix("bell_"))
    if spec in ("qec_logical_0", "qec_logical_1"):
        if n != 3:
            raise GfwignerError("qec presets need --n 3")
        return "stabilizer", apps.logical_group(field, int(spec[-1]))
    if spec == "meanking_phi1":
        if n != 2:
            raise GfwignerError("meanking_phi1 needs --n 2")
        phi1 = apps.mean_king_basis(apps.mean_king_net(field))[0]
        return "dense", state_density(phi1)
    with open(spec) as fh:
        payload = json.load(fh)
    if "stabilizer" in payload:
        gens = [(parse_pauli(s), sign) for s, sign in payload["stabilizer"]]
        return "stabilizer", StabilizerGroup.from_generators(field, gens)
    if "density" in payload:
        rho = np.array([[complex(re, im) for re, im in row]
                        for row in payload["density"]])
        return "dense", check_density_matrix(rho, n)
    raise GfwignerError("state file needs a 'stabilizer' or 'density' key")


# -- subcommands -------------------------------------------------------------------


def cmd_field(args) -> int:
    field = field_new(args.n, args.poly)
    can = [field.bits_str(x) for x in power_ordering(field, "canonical")]
    dual = [field.bits_str(x) for x in power_ordering(field, "dual")]
    if args.format == "csv":
        print("canonical,dual")
        for c, d in zip(can, dual):
            print(f"{c},{d}")
    else:
        print(f"GF(2^{args.n}), polynomial bits (low to high): "
              f"{field.bits_str(field.poly & (field.N - 1))}1")
        print(f"{'canonical':>{args.n + 6}}  {'dual':>{args.n + 6}}")
        for c, d in zip(can, dual):
            print(f"{c:>{args.n + 6}}  {d:>{args.n + 6}}")
    return 0


def cmd_rays(args) -> int:
    field = field_new(args.n, args.poly)
    axis = grid_axis(field)
    for st in all_striations(field):
        print(f"striation {st.label} (ray first):")
        marks = {}
        for i, line in enumerate(st.lines):
            for pt in line.points(field):
                marks[(pt.q, pt.p)] = "R" if i == 0 else str(i)
        for p in reversed(axis):
            print("  " + " ".join(marks[(q, p)] for q in axis))
        print()
    return 0


def cmd_mub(args) -> int:
    field = field_new(args.n, args.poly)
    net = resolve_net(field, args.net)
    bases = mub_bases(net)
    labels = list(bases)
    payload = {
        "n": field.n,
        "net": net.fingerprint(),
        "bases": {
            str(lb): [[[round(z.real, 12), round(z.imag, 12)] for z in v]
                      for v in bases[lb]]
            for lb in labels
        },
    }
    worst_cross = 0.0
    worst_gram = 0.0
    for i, la in enumerate(labels):
        G = np.array([[np.vdot(u, v) for v in bases[la]] for u in bases[la]])
        worst_gram = max(worst_gram, float(np.abs(G - np.eye(field.N)).max()))
        for lb in labels[i + 1:]:
            for u in bases[la]:
                for v in bases[lb]:
                    dev = abs(abs(np.vdot(u, v)) ** 2 - 1 / field.N)
                    worst_cross = max(worst_cross, dev)
    payload["overlap_report"] = {
        "max_gram_deviation": worst_gram,
        "max_cross_overlap_deviation": worst_cross,
    }
    print(json.dumps(payload, indent=2))
    return 0


def cmd_uomega(args) -> int:
    field = field_new(args.n, args.poly)
    for name, i, j in u_omega_gates(field):
        print(f"{name} {i} {j}")
    return 0


def cmd_wigner(args) -> int:
    field = field_new(args.n, args.poly)
    net = resolve_net(field, args.net)
    kind, state = resolve_state(field, args.state)
    if kind == "stabilizer":
        grid = stabilizer_wigner(net, state)
    else:
        grid = wigner_of(net, state)
    sys.stdout.write(export_grid(grid, args.format, {"net": net.fingerprint()}))
    return 0


def cmd_bell(args) -> int:
    field = apps.bell_field()
    net = build_net(field, "covariant")
    if args.verify:
        return run_checks(bell_checks(field))
    counts = apps.bell_survey(field)
    print(f"patterns over 64 nets x 4 states: {counts}")
    for label in apps.BELL_LABELS:
        grid = stabilizer_wigner(net, apps.bell_stabilizer(field, label))
        print(f"\n{label} (covariant all-+1 net):")
        sys.stdout.write(export_grid(grid, args.format))
    return 0


def cmd_qec(args) -> int:
    field = apps.qec_field()
    net = apps.qec_net(field)
    if args.verify:
        return run_checks(qec_checks(field))
    for which in (0, 1):
        grid = stabilizer_wigner(net, apps.logical_group(field, which))
        print(f"logical |{which}_L> (main-diagonal preset net):")
        sys.stdout.write(export_grid(grid, args.format))
        print()
    print("solution family (a, c, e, g):")
    for sol in apps.code_solution_family():
        print("  " + ", ".join(f"{k}={sol[k]}" for k in "aceg"))
    print("covariant solutions:")
    for sol in apps.covariant_code_solutions(field):
        print("  " + ", ".join(f"{k}={sol[k]}" for k in "aceg"))
    return 0


def cmd_meanking(args) -> int:
    field = apps.bell_field()
    net = apps.mean_king_net(field)
    if args.verify:
        return run_checks(meanking_checks(field))
    grid = apps.mean_king_grid(net)
    print("W(phi_1):")
    sys.stdout.write(export_grid(grid, args.format))
    sums = apps.mean_king_line_sums(net)
    print("line sums:")
    for (obs, idx), val in sorted(sums.items()):
        print(f"  {obs}{idx}: {val:.6f}")
    print(f"retrodiction success probability: "
          f"{apps.mean_king_simulate(net):.12f}")
    return 0


# -- verify ------------------------------------------------------------------------


def run_checks(checks) -> int:
    """Run (name, callable) pairs; print one line each; exit 0 iff all pass."""
    failed = 0
    for name, fn in checks:
        try:
            fn()
        except Exception as exc:  # report and keep going
            print(f"FAIL {name}: {exc}")
            failed += 1
        else:
            print(f"PASS {name}")
    return 2 if failed else 0


def field_checks(field: GF2Field):
    def orderings():
        for gen in ("canonical", "dual"):
            seq = power_ordering(field, gen)
            assert len(set(seq)) == field.N, "ordering misses elements"

    def trace_linear():
        for x in field.elements():
            for y in field.elements():
                assert field.trace(x ^ y) == field.trace(x) ^ field.trace(y)

    return [("field.power_ordering_complete", orderings),
            ("field.trace_linear", trace_linear)]


def net_checks(field: GF2Field):
    net = build_net(field, "covariant")

    def mub_property():
        bases = mub_bases(net)
        labels = list(bases)
        for i, la in enumerate(labels):
            G = np.array([[np.vdot(u, v) for v in bases[la]] for u in bases[la]])
            assert np.abs(G - np.eye(field.N)).max() < 1e-10, f"gram {la}"
            for lb in labels[i + 1:]:
                for u in bases[la]:
                    for v in bases[lb]:
                        dev = abs(abs(np.vdot(u, v)) ** 2 - 1 / field.N)
                        assert dev < 1e-10, f"cross {la}/{lb}"

    def f_signs():
        for v in net.f_table().values():
            assert v in (1, -1)

    return [("net.mub_property", mub_property), ("net.f_is_sign", f_signs)]


def wigner_checks(field: GF2Field):
    from .wigner import (
        all_points,
        point_operator,
        purity_identity_residual,
        reconstruct,
    )

    net = build_net(field, "covariant")

    def orthogonality():
        pts = list(all_points(field))
        ops = [point_operator(net, a) for a in pts]
        for i, A in enumerate(ops):
            for j, B in enumerate(ops):
                want = 1 / field.N if i == j else 0.0
                assert abs(np.trace(A @ B).real - want) < 1e-10

    def line_projectors():
        for st in all_striations(field):
            for line in st.lines:
                total = sum(
                    point_operator(net, to_binary(field, pt))
                    for pt in line.points(field)
                )
                from .net import line_state

                v = line_state(net, line)
                assert np.abs(total - np.outer(v, v.conj())).max() < 1e-10

    def roundtrip():
        rng = np.random.default_rng(11)
        v = rng.normal(size=field.N) + 1j * rng.normal(size=field.N)
        rho = state_density(v)
        grid = wigner_of(net, rho)
        assert np.abs(reconstruct(net, grid) - rho).max() < 1e-10
        assert purity_identity_residual(net, grid) < 1e-10

    return [("wigner.operator_orthogonality", orthogonality),
            ("wigner.line_projectors", line_projectors),
            ("wigner.reconstruction_roundtrip", roundtrip)]


def bell_checks(field: GF2Field):
    def survey():
        counts = apps.bell_survey(field)
        assert counts["concentrated"] > 0 and counts["spread"] > 0
        assert sum(counts.values()) == 256

    return [("bell.pattern_survey", survey)]


def qec_checks(field: GF2Field):
    def family():
        fam = apps.code_solution_family()
        assert len(fam) == 8, f"{len(fam)} family solutions"
        cov = apps.covariant_code_solutions(field)
        assert len(cov) == 4, f"{len(cov)} covariant solutions"

    def preset_grid():
        from .wigner import stabilizer_wigner

        net = apps.qec_net(field)
        params = apps.grid_parameters(
            field, stabilizer_wigner(net, apps.logical_group(field, 0))
        )
        assert all(params[k] == Fraction(1, 32) for k in "aceg"), params

    return [("qec.solution_family", family), ("qec.preset_grid", preset_grid)]


def meanking_checks(field: GF2Field):
    def basis_and_sums():
        net = apps.mean_king_net(field)
        basis = apps.mean_king_basis(net)
        G = np.array([[np.vdot(u, v) for v in basis] for u in basis])
        assert np.abs(G - np.eye(4)).max() < 1e-10
        sums = apps.mean_king_line_sums(net)
        for (obs, idx), val in sums.items():
            want = {1: 0.0, 2: 0.5}.get(idx, 0.25)
            assert abs(val - want) < 1e-10, (obs, idx, val)

    def retrodiction():
        net = apps.mean_king_net(field)
        assert abs(apps.mean_king_simulate(net) - 1) < 1e-10

    return [("meanking.basis_and_line_sums", basis_and_sums),
            ("meanking.retrodiction", retrodiction)]


def cmd_verify(args) -> int:
    field = field_new(args.n, args.poly)
    checks = field_checks(field) + net_checks(field) + wigner_checks(field)
    if args.n == 2:
        checks += bell_checks(field) + meanking_checks(field)
    if args.n == 3:
        checks += qec_checks(field)
    return run_checks(checks)


# -- dispatcher ----------------------------------------------------------------------


def _poly_arg(text: str) -> int:
    """Polynomial bits, low-to-high, e.g. '111' for x^2 + x + 1."""
    return int(text[::-1], 2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gfwigner",
        description="Discrete Wigner functions on GF(2^n) phase space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, needs_n=True, formats=None, default_fmt="ascii"):
        p = sub.add_parser(name)
        p.set_defaults(fn=fn)
        if needs_n:
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--poly", type=_poly_arg, default=None,
                           help="polynomial coefficient bits, low to high")
        if formats:
            p.add_argument("--format", choices=formats, default=default_fmt)
        return p

    p = add("field", cmd_field, formats=("ascii", "csv"))
    p.add_argument("--table", action="store_true",
                   help="emit the canonical/dual ordering table (default)")
    add("rays", cmd_rays)
    p = add("mub", cmd_mub)
    p.add_argument("--net", default="covariant")
    add("uomega", cmd_uomega)
    p = add("wigner", cmd_wigner, formats=("ascii", "csv", "json"))
    p.add_argument("--state", required=True)
    p.add_argument("--net", default="default")
    for name, fn in (("bell", cmd_bell), ("qec", cmd_qec),
                     ("meanking", cmd_meanking)):
        p = add(name, fn, needs_n=False, formats=("ascii", "csv", "json"))
        p.add_argument("--verify", action="store_true")
    add("verify", cmd_verify)
    return parser


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.fn(args)
    except (GfwignerError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - internal errors
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
