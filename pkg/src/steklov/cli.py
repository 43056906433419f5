"""Command-line frontend.

Subcommands: spectrum, block, wt, alphas, asym, recover, compare, probe,
selfcheck.  Exit codes: 0 success, 1 domain/numeric error, 2 usage or
configuration error.  Results go to --out when given, else to stdout.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import sys

import numpy as np

from . import asymptotics, dn_map, io as serialization, sturm_liouville, transversal
from .config import load_config, profile_from_config
from .dn_map import block_eigenvalues, dn_block, steklov_spectrum
from .errors import EvaluationError, SteklovError, UsageError
from .inverse import isospectral_compare, recover_boundary, uniqueness_probe
from .warping import build_potential, involute, make_profile


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as handle:
            handle.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _load(args):
    config = load_config(args.config)
    if getattr(args, "m_max", None) is not None:
        config = dataclasses.replace(config, m_max=args.m_max)
    profile = profile_from_config(config)
    return config, profile


def _cmd_spectrum(args) -> int:
    config, profile = _load(args)
    spectrum = steklov_spectrum(profile, config.m_max, config.node_count)
    _emit(serialization.spectrum_csv_text(spectrum), args.out)
    return 0


def _cmd_block(args) -> int:
    config, profile = _load(args)
    potential = build_potential(profile, config.node_count)
    block = dn_block(profile, potential, args.mu)
    minus, plus = block_eigenvalues(block)
    report = {
        "mu": args.mu,
        "a11": block.a11,
        "a12": block.a12,
        "a21": block.a21,
        "a22": block.a22,
        "lambda_minus": minus,
        "lambda_plus": plus,
    }
    _emit(serialization.dump_report(report), args.out)
    return 0


def _cmd_wt(args) -> int:
    config, profile = _load(args)
    potential = build_potential(profile, config.node_count)
    m_fun, n_fun = sturm_liouville.weyl_functions(potential, args.z)
    values = sturm_liouville.fundamental_at(potential, args.z)
    report = {
        "z": args.z,
        "weyl_m": m_fun,
        "weyl_n": n_fun,
        "log_abs_delta": values.delta.log_abs(),
    }
    _emit(serialization.dump_report(report), args.out)
    return 0


def _cmd_alphas(args) -> int:
    config, profile = _load(args)
    potential = build_potential(profile, config.node_count)
    alphas = sturm_liouville.dirichlet_alphas(potential, args.count)
    lines = ["index,alpha"]
    lines += [f"{k},{serialization.format_float(a)}" for k, a in enumerate(alphas)]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_asym(args) -> int:
    config, profile = _load(args)
    potential = build_potential(profile, config.node_count)
    coeffs = asymptotics.riccati_coefficients(potential, args.order)
    report = {
        "order": coeffs.order,
        "beta": list(coeffs.beta),
        "gamma": list(coeffs.gamma),
    }
    if args.mu is not None:
        pred = asymptotics.vp_prediction(profile, potential, args.mu, coeffs)
        report["prediction"] = {
            "mu": args.mu,
            "leading_minus": pred.leading_minus,
            "leading_plus": pred.leading_plus,
            "refined_minus": pred.refined_minus,
            "refined_plus": pred.refined_plus,
            "series_minus": pred.series_minus,
            "series_plus": pred.series_plus,
        }
    _emit(serialization.dump_report(report), args.out)
    return 0


def _cmd_recover(args) -> int:
    config, profile = _load(args)
    spectrum = steklov_spectrum(profile, config.m_max, config.node_count)
    data = recover_boundary(spectrum, (args.fit_from, args.fit_to))
    report = {
        "f0_hat": data.f0_hat,
        "f1_hat": data.f1_hat,
        "b0_hat": data.b0_hat,
        "b1_hat": data.b1_hat,
        "volume_hat": data.volume_hat,
        "residual": data.residual,
    }
    _emit(serialization.dump_report(report), args.out)
    return 0


def _pair(args):
    config_a = load_config(args.a)
    config_b = load_config(args.b)
    m_max = args.m_max if args.m_max is not None else max(config_a.m_max, config_b.m_max)
    profile_a = profile_from_config(config_a)
    profile_b = profile_from_config(config_b)
    return config_a, config_b, profile_a, profile_b, m_max


def _cmd_compare(args) -> int:
    config_a, config_b, profile_a, profile_b, m_max = _pair(args)
    spec_a = steklov_spectrum(profile_a, m_max, config_a.node_count)
    spec_b = steklov_spectrum(profile_b, m_max, config_b.node_count)
    result = isospectral_compare(spec_a, spec_b, args.tol)
    report = {
        "matched": result.matched,
        "max_deviation": result.max_deviation,
        "count": result.count,
        "verdict": "isospectral" if result.matched else "distinct",
    }
    _emit(serialization.dump_report(report), args.out)
    return 0


def _cmd_probe(args) -> int:
    _, _, profile_a, profile_b, m_max = _pair(args)
    result = uniqueness_probe(profile_a, profile_b, m_max)
    report = {
        "verdict": result.verdict,
        "witness_m": result.witness_m,
        "witness_deviation": result.witness_deviation,
        "spectra_matched": result.spectra_matched,
        "spectra_max_deviation": result.spectra_max_deviation,
        "cb_ok_a": result.cb_ok_a,
        "cb_ok_b": result.cb_ok_b,
    }
    _emit(serialization.dump_report(report), args.out)
    return 0


def _selfcheck_cases():
    flat2 = make_profile([1.0], 2, 0.0)
    flat3 = make_profile([1.0], 3, 0.0)
    potential = build_potential(flat2)

    def q0_identities():
        worst = 0.0
        for z in (-50.0, 0.0, 1.0, 1e2, 1e4, 1e6):
            values = sturm_liouville.fundamental_at(potential, z)
            root = complex(z) ** 0.5
            if z > 0:
                r = math.sqrt(z)
                log_delta = r + math.log1p(-math.exp(-2.0 * r)) - math.log(2.0 * r)
                log_cosh = r + math.log1p(math.exp(-2.0 * r)) - math.log(2.0)
                worst = max(worst, abs(values.delta.log_abs() - log_delta))
                worst = max(worst, abs(values.dd.log_abs() - log_cosh))
                worst = max(worst, abs(values.ee.log_abs() - log_cosh))
            else:
                y = math.sqrt(-z) if z < 0 else 0.0
                delta_ref = math.sin(y) / y if y else 1.0
                cos_ref = math.cos(y) if y else 1.0
                worst = max(worst, abs(values.delta.value - delta_ref))
                worst = max(worst, abs(values.dd.value - cos_ref))
                worst = max(worst, abs(values.ee.value - cos_ref))
        return worst <= 1e-9, f"max deviation {worst:.2e}"

    def cylinder():
        worst = 0.0
        for profile in (flat2, flat3):
            spectrum = steklov_spectrum(profile, m_max=10)
            for entry in spectrum.entries:
                root = math.sqrt(transversal.kappa(profile.n, entry.m_index))
                if entry.branch == "-":
                    ref = root * math.tanh(root / 2.0) if root else 0.0
                else:
                    ref = root / math.tanh(root / 2.0) if root else 2.0
                worst = max(worst, abs(entry.value - ref) / max(1.0, abs(ref)))
        return worst <= 1e-8, f"max relative deviation {worst:.2e}"

    def dirichlet_roots():
        alphas = sturm_liouville.dirichlet_alphas(potential, 5)
        refs = np.array([-((k + 1) ** 2) * math.pi**2 for k in range(5)])
        worst = float(np.max(np.abs(alphas - refs)))
        return worst <= 1e-7, f"max deviation {worst:.2e}"

    def block_closed_form():
        block = dn_block(flat2, potential, 1.0)
        worst = max(
            abs(block.a11 - 1.0 / math.tanh(1.0)),
            abs(block.a22 - 1.0 / math.tanh(1.0)),
            abs(block.a12 + 1.0 / math.sinh(1.0)),
            abs(block.a21 + 1.0 / math.sinh(1.0)),
        )
        return worst <= 1e-10, f"max deviation {worst:.2e}"

    def expansion_constant():
        shifted = make_profile([1.0], 3, -2.0)  # q = 2 exactly
        coeffs = asymptotics.riccati_coefficients(build_potential(shifted), order=2)
        ref = np.array([1.0, 0.0, -0.5])
        worst = float(np.max(np.abs(coeffs.beta - ref)))
        return worst <= 1e-12, f"max deviation {worst:.2e}"

    def reflection_invariance():
        coeffs = np.zeros(3)
        coeffs[0], coeffs[1], coeffs[2] = 1.2, 0.15, 0.05
        profile = make_profile(coeffs, 3, 0.0)
        spec = steklov_spectrum(profile, m_max=10)
        spec_r = steklov_spectrum(involute(profile), m_max=10)
        a = spec.values_with_multiplicity()
        b = spec_r.values_with_multiplicity()
        worst = float(np.max(np.abs(np.array(a) - np.array(b))))
        return worst <= 1e-7, f"max deviation {worst:.2e}"

    return [
        ("flat-potential identities", q0_identities),
        ("cylinder eigenvalues", cylinder),
        ("dirichlet roots", dirichlet_roots),
        ("dn block closed form", block_closed_form),
        ("constant-potential expansion", expansion_constant),
        ("reflection invariance", reflection_invariance),
    ]


def _cmd_selfcheck(args) -> int:
    failures = 0
    for name, case in _selfcheck_cases():
        ok, detail = case()
        status = "PASS" if ok else "FAIL"
        print(f"{status}  {name}: {detail}")
        if not ok:
            failures += 1
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="steklov", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **flags):
        p = sub.add_parser(name)
        p.set_defaults(func=func)
        for flag, kwargs in flags.items():
            p.add_argument(flag, **kwargs)
        return p

    config_arg = {"required": True, "help": "JSON run configuration"}
    out_arg = {"default": None, "help": "output path (default: stdout)"}

    add("spectrum", _cmd_spectrum, **{"--config": config_arg, "--out": out_arg,
        "--m-max": {"type": int, "dest": "m_max", "default": None}})
    add("block", _cmd_block, **{"--config": config_arg, "--out": out_arg,
        "--mu": {"type": float, "required": True}})
    add("wt", _cmd_wt, **{"--config": config_arg, "--out": out_arg,
        "--z": {"type": float, "required": True}})
    add("alphas", _cmd_alphas, **{"--config": config_arg, "--out": out_arg,
        "--count": {"type": int, "required": True}})
    add("asym", _cmd_asym, **{"--config": config_arg, "--out": out_arg,
        "--order": {"type": int, "default": asymptotics.DEFAULT_ORDER},
        "--mu": {"type": float, "default": None}})
    add("recover", _cmd_recover, **{"--config": config_arg, "--out": out_arg,
        "--m-max": {"type": int, "dest": "m_max", "default": None},
        "--fit-from": {"type": int, "dest": "fit_from", "required": True},
        "--fit-to": {"type": int, "dest": "fit_to", "required": True}})
    add("compare", _cmd_compare, **{"--a": {"required": True}, "--b": {"required": True},
        "--tol": {"type": float, "required": True}, "--out": out_arg,
        "--m-max": {"type": int, "dest": "m_max", "default": None}})
    add("probe", _cmd_probe, **{"--a": {"required": True}, "--b": {"required": True},
        "--out": out_arg, "--m-max": {"type": int, "dest": "m_max", "default": None}})
    add("selfcheck", _cmd_selfcheck)
    return parser


def run_command(argv) -> int:
    """Dispatch a CLI invocation; returns the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SteklovError, EvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
