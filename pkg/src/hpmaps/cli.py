"""Command-line reports over the hpmaps library.

Every report writes delimited output (csv / json / pretty) to stdout or
--output; curve-shaped reports additionally render a matplotlib figure
next to the delimited output when --plot is given. Exit codes: 0 on
success, 1 when a verification-style command finds a failure, 2 on
usage errors.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction

import click

from . import dirichlet, l1bound, prob
from . import summatory as _summatory_module  # noqa: F401
from .summatory import blancmange_tables, closed_sums, summatory, takagi, trollope_rhs
from .chi import chi, chi_of_B, find_periodic_points, hp_orbit, r
from .digits import TwoAdic, big_B, digit_profile

SCHEMA_VERSION = 1


def _fmt_value(v):
    if hasattr(v, "item") and not isinstance(v, (Fraction, tuple, list)):
        v = v.item()  # numpy scalar
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, complex):
        return f"{v.real!r}{v.imag:+}j"
    if isinstance(v, float):
        return repr(float(v))
    if isinstance(v, (tuple, list)):
        return "".join(str(x) for x in v)
    return v


def _emit(name: str, header: list[str], rows: list[dict], fmt: str, output):
    rendered = [{h: _fmt_value(row.get(h)) for h in header} for row in rows]
    if fmt == "json":
        text = json.dumps({"schema": f"hpmaps/{name}/{SCHEMA_VERSION}",
                           "columns": header, "rows": rendered}, indent=2)
        text += "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\r\n")
        writer.writeheader()
        writer.writerows(rendered)
        text = buf.getvalue()
    else:
        widths = [max(len(h), *(len(str(r[h])) for r in rendered)) if rendered
                  else len(h) for h in header]
        lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
        for r in rendered:
            lines.append("  ".join(str(r[h]).ljust(w)
                                   for h, w in zip(header, widths)))
        text = "\n".join(lines) + "\n"
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _figure_path(output, command: str) -> str:
    if output:
        stem = output.rsplit(".", 1)[0]
        return f"{stem}.png"
    return f"{command}.png"


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.BadParameter(f"not a rational: {text}") from exc


def _parse_word(text: str) -> tuple[int, ...]:
    if not text or set(text) - {"0", "1"}:
        raise click.BadParameter("words are non-empty strings over {0,1}")
    return tuple(int(c) for c in text)


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise click.BadParameter(f"not a complex number: {text}") from exc


def _eval_config(config_path, **overrides) -> dirichlet.EvalConfig:
    values = {}
    if config_path:
        with open(config_path) as fh:
            loaded = json.load(fh)
        fields = dirichlet.EvalConfig.__dataclass_fields__
        values = {k: v for k, v in loaded.items() if k in fields}
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return dirichlet.EvalConfig(**values)
    except (TypeError, ValueError) as exc:
        raise click.BadParameter(str(exc)) from exc


fmt_option = click.option("--format", "fmt", default="pretty",
                          type=click.Choice(["csv", "json", "pretty"]))
out_option = click.option("--output", default=None,
                          type=click.Path(dir_okay=False, writable=True))
config_option = click.option("--config", "config_path", default=None,
                             type=click.Path(exists=True, dir_okay=False))
p_option = click.option("--p", default=3, show_default=True,
                        help="odd multiplier of the map H_p")


@click.group()
def main():
    """Reports over the H_p maps: exact tables, sweeps, and line integrals."""


@main.command()
@click.option("--t-max", default=14, show_default=True)
@p_option
@fmt_option
@out_option
def table1(t_max, p, fmt, output):
    """Exact table of #1, lambda, chi_p, r_p, B and chi_p(B) for t <= t-max."""
    if t_max < 0:
        raise click.BadParameter("--t-max must be >= 0")
    rows = []
    for t in range(t_max + 1):
        prof = digit_profile(t)
        rows.append({"t": t, "ones": prof.ones, "lambda": prof.length,
                     "chi_p": chi(t, p), "r_p": r(t, p),
                     "B_t": big_B(t), "chi_p_B": chi_of_B(t, p)})
    _emit("table1", ["t", "ones", "lambda", "chi_p", "r_p", "B_t", "chi_p_B"],
          rows, fmt, output)


@main.command()
@click.option("--t-max", required=True, type=int)
@p_option
@click.option("--threads", default=1, show_default=True)
@fmt_option
@out_option
def sweep(t_max, p, threads, fmt, output):
    """All periodic-point witnesses t <= t-max (orbit-verified)."""
    if t_max < 1 or threads < 1:
        raise click.BadParameter("--t-max and --threads must be >= 1")
    rows = [{"t": rec.witness_t, "omega": rec.omega, "word": rec.word,
             "verified": rec.verified_by_orbit}
            for rec in find_periodic_points(p, t_max, threads)]
    _emit("sweep", ["t", "omega", "word", "verified"], rows, fmt, output)


@main.command()
@click.argument("x", type=int)
@p_option
@click.option("--max-steps", default=10**6, show_default=True)
@fmt_option
@out_option
def orbit(x, p, max_steps, fmt, output):
    """Iterate H_p from X until a repeat (or the step cap)."""
    rep = hp_orbit(x, p, max_steps)
    rows = [{"step": i, "value": v,
             "parity": rep.parity_word[i] if i < len(rep.parity_word) else "",
             "cycle_member": v in rep.cycle_members}
            for i, v in enumerate(rep.iterates)]
    _emit("orbit", ["step", "value", "parity", "cycle_member"], rows, fmt, output)
    if not rep.cycle:
        click.echo("no repeat within the step cap", err=True)


@main.command("summatory")
@click.option("--kind", default="chi_p", show_default=True,
              type=click.Choice(["ones", "r_p", "chi_p"]))
@p_option
@click.option("--n-max", default=256, show_default=True)
@click.option("--plot", is_flag=True)
@fmt_option
@out_option
def summatory_cmd(kind, p, n_max, plot, fmt, output):
    """Exact prefix sums of #1, r_p or chi_p."""
    if n_max < 1:
        raise click.BadParameter("--n-max must be >= 1")
    table = summatory(kind, p, n_max)
    rows = [{"n": x, "sum": y} for x, y in zip(table.xs, table.ys)]
    _emit("summatory", ["n", "sum"], rows, fmt, output)
    if plot:
        from .plots import plot_series

        path = plot_series([(kind, list(table.xs), [float(y) for y in table.ys])],
                           f"prefix sums of {kind} (p={p})",
                           _figure_path(output, "summatory"), step=True)
        click.echo(f"figure: {path}", err=True)


@main.command()
@p_option
@click.option("--x-max", default=256, show_default=True)
@click.option("--plot", is_flag=True)
@fmt_option
@out_option
def blancmange(p, x_max, plot, fmt, output):
    """The fluctuation curves Bl, Bl_p and Bl~_p at integer arguments."""
    if x_max < 1:
        raise click.BadParameter("--x-max must be >= 1")
    tables = blancmange_tables(p, x_max)
    xs = tables["bl"].xs
    rows = [{"x": x, "bl": tables["bl"].ys[i], "bl_p": tables["bl_p"].ys[i],
             "bl_tilde": tables["bl_tilde"].ys[i]} for i, x in enumerate(xs)]
    _emit("blancmange", ["x", "bl", "bl_p", "bl_tilde"], rows, fmt, output)
    if plot:
        from .plots import plot_series

        curves = [(k, list(xs), [float(v) for v in tables[k].ys])
                  for k in ("bl", "bl_p", "bl_tilde")]
        path = plot_series(curves, f"blancmange curves (p={p})",
                           _figure_path(output, "blancmange"))
        click.echo(f"figure: {path}", err=True)


@main.command("takagi")
@click.option("--w", default="1/2", show_default=True)
@click.option("--points", default=513, show_default=True)
@click.option("--plot", is_flag=True)
@fmt_option
@out_option
def takagi_cmd(w, points, plot, fmt, output):
    """The Takagi curve T_w sampled at dyadic points of [0, 1]."""
    if points < 2:
        raise click.BadParameter("--points must be >= 2")
    wfrac = _parse_fraction(w)
    if not -1 < wfrac < 1:
        raise click.BadParameter("need |w| < 1")
    rows = []
    for i in range(points):
        x = Fraction(i, points - 1)
        rows.append({"x": x, "T_w": takagi(wfrac, x)})
    _emit("takagi", ["x", "T_w"], rows, fmt, output)
    if plot:
        from .plots import plot_series

        path = plot_series([(f"T_{w}", [float(r['x']) for r in rows],
                             [float(r["T_w"]) for r in rows])],
                           f"Takagi curve, w = {w}",
                           _figure_path(output, "takagi"))
        click.echo(f"figure: {path}", err=True)


@main.command("dirichlet-eval")
@click.option("--s", required=True, help="complex point, e.g. '2+0.5j'")
@click.option("--which", default="zeta", show_default=True,
              type=click.Choice(["zeta", "xi", "c"]))
@p_option
@click.option("--omega", default=1, show_default=True)
@config_option
@fmt_option
@out_option
def dirichlet_eval(s, which, p, omega, config_path, fmt, output):
    """Evaluate zeta_p, Xi_p or C_{p,omega} at a point (with continuation)."""
    cfg = _eval_config(config_path)
    z = _parse_complex(s)
    try:
        if which == "zeta":
            res = dirichlet.zeta_p(z, p, cfg)
        elif which == "xi":
            res = dirichlet.xi_p(z, p, cfg)
        else:
            res = dirichlet.c_omega(z, omega, p, cfg)
    except (dirichlet.NearPoleError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    rows = [{"s": z, "which": which, "value_re": res.value.real,
             "value_im": res.value.imag, "err": res.err}]
    _emit("dirichlet-eval", ["s", "which", "value_re", "value_im", "err"],
          rows, fmt, output)


@main.command("perron")
@click.option("--n", required=True, type=int)
@click.option("--omega", required=True, type=int)
@p_option
@click.option("--b", default=2.0, show_default=True)
@config_option
@fmt_option
@out_option
def perron_cmd(n, omega, p, b, config_path, fmt, output):
    """Line integral on Re s = b; equals 3/2 - r_p(n) - chi_p(n)/omega."""
    cfg = _eval_config(config_path)
    try:
        res = dirichlet.perron_integral(n, omega, p, b, cfg)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    expected = float(Fraction(3, 2) - r(n, p) - Fraction(chi(n, p), omega))
    rows = [{"n": n, "omega": omega, "integral": res.value.real,
             "expected": expected, "abs_diff": abs(res.value.real - expected),
             "err_budget": res.err}]
    _emit("perron", ["n", "omega", "integral", "expected", "abs_diff",
                     "err_budget"], rows, fmt, output)


@main.command("residues")
@click.option("--n", required=True, type=int)
@click.option("--omega", required=True, type=int)
@click.option("--verbatim", is_flag=True,
              help="evaluate the source's printed formula instead")
@config_option
@fmt_option
@out_option
def residues_cmd(n, omega, verbatim, config_path, fmt, output):
    """Strip residue sum R_3(omega, n) of the cycle-criterion integrand."""
    cfg = _eval_config(config_path)
    try:
        res = dirichlet.residue_R3(omega, n, cfg, verbatim=verbatim)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    rows = [{"n": n, "omega": omega, "R3": res.value.real,
             "err_budget": res.err, "verbatim": verbatim}]
    _emit("residues", ["n", "omega", "R3", "err_budget", "verbatim"],
          rows, fmt, output)


@main.command("shifted")
@click.option("--n", required=True, type=int)
@click.option("--omega", required=True, type=int)
@config_option
@fmt_option
@out_option
def shifted_cmd(n, omega, config_path, fmt, output):
    """Line integral on Re s = -1/4 (p = 3)."""
    cfg = _eval_config(config_path)
    try:
        res = dirichlet.shifted_integral(n, omega, cfg)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    rows = [{"n": n, "omega": omega, "integral": res.value.real,
             "err_budget": res.err}]
    _emit("shifted", ["n", "omega", "integral", "err_budget"], rows, fmt, output)


@main.command("quadcheck")
@click.option("--b", default=2.0, show_default=True)
@click.option("--tol", default=1e-6, show_default=True)
@fmt_option
@out_option
def quadcheck_cmd(b, tol, fmt, output):
    """Validate the quadrature engine against the closed-form reference."""
    try:
        rep = dirichlet.quadrature_engine_selfcheck(b)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    rows = [dict(rep, passed=rep["abs_error"] <= tol)]
    _emit("quadcheck", ["engine", "reference", "abs_error", "reported_budget",
                        "passed"], rows, fmt, output)
    if rep["abs_error"] > tol:
        sys.exit(1)


@main.command("vdp")
@click.option("--t-max", default=32, show_default=True)
@p_option
@fmt_option
@out_option
def vdp_cmd(t_max, p, fmt, output):
    """van der Put coefficients of chi_p."""
    if t_max < 0:
        raise click.BadParameter("--t-max must be >= 0")
    rows = [{"t": t, "coefficient": prob.vdp_coeff(t, p)}
            for t in range(t_max + 1)]
    _emit("vdp", ["t", "coefficient"], rows, fmt, output)


@main.command("fourier")
@click.option("--depth", "n_depth", default=6, show_default=True)
@p_option
@fmt_option
@out_option
def fourier_cmd(n_depth, p, fmt, output):
    """DFT of chi_p over one depth-N period of Z/2^N."""
    if not 1 <= n_depth <= 16:
        raise click.BadParameter("--depth must be in 1..16")
    hats = prob.chi_N_hat(n_depth, p)
    rows = [{"k": k, "re": v.real, "im": v.imag} for k, v in enumerate(hats)]
    _emit("fourier", ["k", "re", "im"], rows, fmt, output)


@main.command("fp")
@click.option("--k", required=True, type=int)
@click.option("--n", required=True, type=int)
@p_option
@click.option("--method", default="exact", show_default=True,
              type=click.Choice(["exact", "enumerate", "montecarlo"]))
@click.option("--depth", default=40, show_default=True)
@click.option("--samples", default=200000, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--plot", is_flag=True)
@fmt_option
@out_option
def fp_cmd(k, n, p, method, depth, samples, seed, plot, fmt, output):
    """P(chi_p = k mod p^n): closed form, digit enumeration, or Monte Carlo."""
    try:
        if method == "exact":
            rows = [{"k": k, "n": n, "mass": prob.f_p(k, n, p)}]
            header = ["k", "n", "mass"]
        elif method == "enumerate":
            lo, hi = prob.f_p_interval(k, n, p, depth)
            rows = [{"k": k, "n": n, "lower": lo, "upper": hi}]
            header = ["k", "n", "lower", "upper"]
        else:
            rep = prob.f_p_montecarlo(k, n, p, samples, seed)
            rows = [dict(k=k, n=n, **rep)]
            header = ["k", "n", "estimate", "three_sigma", "samples", "seed"]
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    _emit("fp", header, rows, fmt, output)
    if plot and method == "exact":
        from .plots import plot_bars

        ks = [i for i in range(p**n) if i % p]
        path = plot_bars(ks, [float(prob.f_p(i, n, p)) for i in ks],
                         f"f_{p} on level {n}", _figure_path(output, "fp"))
        click.echo(f"figure: {path}", err=True)


@main.command("phi")
@click.option("--t", required=True, help="rational with p-power denominator")
@p_option
@fmt_option
@out_option
def phi_cmd(t, p, fmt, output):
    """Characteristic function phi_p at a rational frequency."""
    frac = _parse_fraction(t)
    try:
        val = prob.phi_p(frac, p)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    rows = [{"t": frac, "re": val.real, "im": val.imag}]
    _emit("phi", ["t", "re", "im"], rows, fmt, output)


@main.command("lipschitz")
@click.option("--s", required=True, type=int)
@click.option("--t", required=True, type=int)
@p_option
@fmt_option
@out_option
def lipschitz_cmd(s, t, p, fmt, output):
    """p-adic Lipschitz bound vs the exact distance |chi_p(s)-chi_p(t)|_p."""
    if s < 0 or t < 0:
        raise click.BadParameter("--s and --t must be naturals")
    try:
        bound = prob.lipschitz_bound(s, t, p)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    actual = prob.padic_distance(s, t, p)
    rows = [{"s": s, "t": t, "bound": bound, "actual": actual,
             "dominated": actual <= bound}]
    _emit("lipschitz", ["s", "t", "bound", "actual", "dominated"],
          rows, fmt, output)
    if actual > bound:
        sys.exit(1)


@main.command("bayes")
@click.option("--x", required=True, type=int)
@click.option("--word", required=True, help="bit word, LSB first, e.g. 01")
@click.option("--n", default=1, show_default=True)
@p_option
@fmt_option
@out_option
def bayes_cmd(x, word, n, p, fmt, output):
    """Fixed-point indicator vs the 2^|j| f_p ceiling for j repeated n times."""
    bits = _parse_word(word)
    try:
        rep = prob.bayes_check(x, bits, n, p)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    rows = [dict(x=x, word=bits, n=n, **rep)]
    header = ["x", "word", "n", "indicator", "bound", "bound_holds"]
    if "length_bound_holds" in rep:
        header.append("length_bound_holds")
    _emit("bayes", header, rows, fmt, output)
    if not rep["bound_holds"]:
        sys.exit(1)


@main.command("tau")
@click.option("--z", required=True, help="rational 2-adic, e.g. -1/7")
@click.option("--kappa", required=True, type=int)
@p_option
@fmt_option
@out_option
def tau_cmd(z, kappa, p, fmt, output):
    """The digit-spread tau_kappa(z) and the real value chi_{p;kappa}(z)."""
    frac = _parse_fraction(z)
    try:
        spread = l1bound.tau_kappa(TwoAdic(frac), kappa)
        value = l1bound.chi_prime_real(spread, p)
        rows = [{"z": frac, "tau": spread.value, "chi_kappa": value}]
    except l1bound.DivergenceError as exc:
        rows = [{"z": frac, "tau": l1bound.tau_kappa(TwoAdic(frac), kappa).value,
                 "chi_kappa": f"divergent ({exc})"}]
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    _emit("tau", ["z", "tau", "chi_kappa"], rows, fmt, output)


@main.command("l1")
@click.option("--kappa", required=True, type=int)
@p_option
@click.option("--m-shells", default=12, show_default=True)
@click.option("--z", default=None, help="optional point to reconstruct")
@fmt_option
@out_option
def l1_cmd(kappa, p, m_shells, z, fmt, output):
    """Closed-form L1 bound, truncated norm, and optional reconstruction."""
    try:
        closed = l1bound.l1_bound(p, kappa)
        truncated, tail = l1bound.l1_norm_truncated(p, kappa, m_shells)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    row = {"kappa": kappa, "closed_bound": closed, "truncated": truncated,
           "tail_bound": tail}
    header = ["kappa", "closed_bound", "truncated", "tail_bound"]
    if z is not None:
        frac = _parse_fraction(z)
        row["reconstructed"] = l1bound.fourier_reconstruct(
            TwoAdic(frac), p, kappa, m_shells)
        row["exact"] = l1bound.chi_kappa_real(TwoAdic(frac), p, kappa)
        header += ["reconstructed", "exact"]
    _emit("l1", header, [row], fmt, output)


@main.command("verify-all")
@click.option("--t-max", default=1 << 15, show_default=True)
def verify_all(t_max):
    """Fast end-to-end consistency pass; exit 1 on any failure."""
    failures = 0

    def check(label, ok):
        nonlocal failures
        click.echo(f"{'PASS' if ok else 'FAIL'}  {label}")
        if not ok:
            failures += 1

    expected = {1: -1, 2: 1, 3: -1, 5: -7, 6: -5, 7: -1, 10: 1, 15: -1}
    found = {rec.witness_t: rec.omega
             for rec in find_periodic_points(3, t_max)
             if rec.witness_t <= 15}
    check("sweep witnesses t <= 15", found == expected)
    check("chi_3 functional equations",
          all(chi(2 * t, 3) == chi(t, 3) / 2
              and chi(2 * t + 1, 3) == (3 * chi(t, 3) + 1) / 2
              for t in range(1 << 10)))
    check("r_3 summatory closed form",
          all(summatory("r_p", 3, (1 << n) - 1).ys[-1]
              == closed_sums(3, n)["r_closed"] for n in (4, 6, 8)))
    check("Trollope digit-sum identity",
          all(summatory("ones", 2, n).ys[-1] == trollope_rhs(n)
              for n in range(1, 257)))
    check("kappa_n(1) = 4, kappa_n(0) = 0",
          all(dirichlet.kappa(n, 1) == 4 and dirichlet.kappa(n, 0) == 0
              for n in range(1, 101)))
    check("f_3 level-1 masses",
          prob.f_p(1, 1, 3) == Fraction(1, 3) and prob.f_p(2, 1, 3) == Fraction(2, 3))
    check("L1 closed bound (3, 3)", l1bound.l1_bound(3, 3) == Fraction(11, 12))
    check("chi'_3(tau_3(-1)) = 4/5",
          l1bound.chi_kappa_real(TwoAdic(-1), 3, 3) == Fraction(4, 5))
    check("quadrature reference",
          abs(dirichlet.quadrature_reference(2.0) - 0.2869392939760027) < 1e-9)
    lo, hi = prob.f_p_interval(1, 1, 3)
    check("f_3 enumeration interval", lo <= Fraction(1, 3) <= hi)
    if failures:
        sys.exit(1)


if __name__ == "__main__":
    main()
