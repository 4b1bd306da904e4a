"""Command-line front end.

    oadlc analyze|optimize|sweep|pattern|validate --config <file>
          [--set section.key=value ...] [--out <dir>]
          [--emit-pattern] [--exhaustive]

Exit codes: 0 success, 2 parse/validation error, 3 infeasible problem,
4 numeric domain error.  All emitted files are byte-identical across runs
of the same configuration.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import units
from .config import DesignConfig, parse_config
from .core import build_report
from .errors import ConfigError, DomainError, FabricationError, InfeasibleError
from .optimize import (DesignSolution, FeasibilityReport, check_feasible,
                       exhaustive_search, optimize)
from .pattern import TabSpec, assembly_kit, generate_assembly_kit, write_svg
from .pattern import write_csv as write_pattern_csv
from .records import fmt6, write_record
from .records import write_csv as write_table_csv

_LENGTH = (units.m_to_mm, "mm")
_CHECK_UNITS = {
    "disk_fit": _LENGTH,
    "flat_within_fab": _LENGTH,
    "crease_within_fab": _LENGTH,
    "folded_length_min": _LENGTH,
    "folded_length_max": _LENGTH,
    "thickness_min": _LENGTH,
    "thickness_max": _LENGTH,
    "inplane_min": (units.npm_to_npmm, "N/mm"),
    "bending_min": (units.nm_to_mnm, "mN*m"),
}


def _feasibility_rows(report: FeasibilityReport) -> list[dict]:
    rows = []
    for chk in report.checks:
        conv, unit = _CHECK_UNITS[chk.name]
        rows.append({
            "name": chk.name,
            "value": conv(chk.value),
            "bound": conv(chk.bound),
            "slack": conv(chk.slack),
            "unit": unit,
            "ok": chk.ok,
        })
    return rows


def _tab_spec(cfg: DesignConfig) -> TabSpec | None:
    out = cfg.output
    if not out.tabs:
        return None
    return TabSpec(depth_mm=out.tab_depth_mm)


def _require_blocks(cfg: DesignConfig, command: str, *blocks: str) -> None:
    for name in blocks:
        if getattr(cfg, name) is None:
            raise ConfigError(f"'{command}' needs a '{name}' block in the config")


def _out_dir(cfg: DesignConfig, args) -> Path:
    out = Path(args.out) if args.out else Path(cfg.output.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _solution_payload(sol: DesignSolution) -> dict:
    payload = {
        "W_mm": units.m_to_mm(sol.W),
        "alpha_deg": units.rad_to_deg(sol.alpha),
        "n": sol.n,
        "K_eta_N_mm": units.npm_to_npmm(sol.K_eta),
        "D_eta_mNm": units.nm_to_mnm(sol.D_eta),
        "mass_g": units.kg_to_g(sol.mass),
        "folded_length_mm": units.m_to_mm(sol.folded_length),
        "folded_thickness_mm": units.m_to_mm(sol.folded_thickness),
        "eta_deg": units.rad_to_deg(sol.eta),
        "layout": sol.layout,
        "feasible": sol.report.feasible,
        "feasibility": _feasibility_rows(sol.report),
        "evaluations": sol.evaluations,
    }
    if sol.R is not None:
        payload["R_mm"] = units.m_to_mm(sol.R)
    return payload


def cmd_analyze(cfg: DesignConfig, args) -> int:
    _require_blocks(cfg, "analyze", "assembly")
    out = _out_dir(cfg, args)
    assembly = cfg.assembly.build(cfg.material)
    rep = build_report(assembly, cfg.assembly.eta,
                       cfg.model.connector_allowance, cfg.model.unit_count)
    record = {
        "config": cfg.resolved,
        "report": {
            "K_eta_N_mm": units.npm_to_npmm(rep.K_eta),
            "D_eta_mNm": units.nm_to_mnm(rep.D_eta),
            "eta_deg": units.rad_to_deg(rep.eta),
            "K_C_N_mm": [units.npm_to_npmm(v) for v in rep.K_C],
            "K_S_N_mm": [units.npm_to_npmm(v) for v in rep.K_S],
            "D_C_mNm": [units.nm_to_mnm(v) for v in rep.D_C],
            "D_S_mNm": [units.nm_to_mnm(v) for v in rep.D_S],
            "mass_g": units.kg_to_g(rep.mass),
            "folded_length_mm": units.m_to_mm(rep.folded_length),
            "folded_thickness_mm": units.m_to_mm(rep.folded_thickness),
        },
    }
    path = out / "analysis.json"
    write_record(path, record)
    print(f"K_eta = {fmt6(units.npm_to_npmm(rep.K_eta))} N/mm at "
          f"eta = {fmt6(units.rad_to_deg(rep.eta))} deg")
    print(f"D_eta = {fmt6(units.nm_to_mnm(rep.D_eta))} mN*m")
    print(f"mass = {fmt6(units.kg_to_g(rep.mass))} g")
    print(f"folded: {fmt6(units.m_to_mm(rep.folded_length))} mm long, "
          f"{fmt6(units.m_to_mm(rep.folded_thickness))} mm thick")
    print(f"wrote {path}")
    return 0


def _emit_patterns(cfg: DesignConfig, sol: DesignSolution, out: Path) -> list[Path]:
    tab = _tab_spec(cfg)
    fab = cfg.constraints.L_fab if cfg.constraints is not None else None
    p1, p2, notes = generate_assembly_kit(
        sol, cfg.material, tab, fab_limit=fab,
        connector_allowance=cfg.model.connector_allowance,
        start=cfg.output.start_crease, kerf_mm=cfg.output.kerf_mm)
    paths = []
    for name, pattern in (("layer1", p1), ("layer2", p2)):
        path = out / f"{name}.svg"
        write_svg(pattern, path)
        paths.append(path)
        if cfg.output.emit_csv:
            cpath = out / f"{name}.csv"
            write_pattern_csv(pattern, cpath)
            paths.append(cpath)
    notes_path = out / "kit.json"
    write_record(notes_path, {"config": cfg.resolved, "notes": notes})
    paths.append(notes_path)
    return paths


def cmd_optimize(cfg: DesignConfig, args) -> int:
    _require_blocks(cfg, "optimize", "constraints")
    out = _out_dir(cfg, args)
    if args.exhaustive:
        sol = exhaustive_search(cfg.material, cfg.constraints,
                                connector_allowance=cfg.model.connector_allowance,
                                unit_count=cfg.model.unit_count)
    else:
        sol = optimize(cfg.material, cfg.constraints,
                       connector_allowance=cfg.model.connector_allowance,
                       unit_count=cfg.model.unit_count)
    record = {"config": cfg.resolved, "solution": _solution_payload(sol)}
    path = out / "solution.json"
    write_record(path, record)
    print(f"optimum: W = {fmt6(units.m_to_mm(sol.W))} mm, n = {sol.n}, "
          f"alpha = {fmt6(units.rad_to_deg(sol.alpha))} deg")
    print(f"mass = {fmt6(units.kg_to_g(sol.mass))} g, "
          f"D_eta = {fmt6(units.nm_to_mnm(sol.D_eta))} mN*m, "
          f"K_eta = {fmt6(units.npm_to_npmm(sol.K_eta))} N/mm")
    print(f"folded: {fmt6(units.m_to_mm(sol.folded_length))} mm long, "
          f"{fmt6(units.m_to_mm(sol.folded_thickness))} mm thick")
    print(f"wrote {path}")
    if args.emit_pattern:
        for p in _emit_patterns(cfg, sol, out):
            print(f"wrote {p}")
    return 0


def cmd_sweep(cfg: DesignConfig, args) -> int:
    _require_blocks(cfg, "sweep", "assembly", "sweep")
    out = _out_dir(cfg, args)
    base = cfg.assembly
    rows = []
    for value in cfg.sweep.values:
        try:
            if cfg.sweep.vary == "W_mm":
                asm_cfg = _replace_assembly(base, W=units.mm_to_m(value))
            elif cfg.sweep.vary == "n":
                asm_cfg = _replace_assembly(base, n=int(value))
            else:
                asm_cfg = _replace_assembly(base, alpha=units.deg_to_rad(value))
            assembly = asm_cfg.build(cfg.material)
            rep = build_report(assembly, base.eta, cfg.model.connector_allowance,
                               cfg.model.unit_count)
        except DomainError as err:
            print(f"skipping {cfg.sweep.vary} = {value}: {err}", file=sys.stderr)
            continue
        rows.append((
            int(value) if cfg.sweep.vary == "n" else float(value),
            float(units.npm_to_npmm(rep.K_eta)),
            float(units.nm_to_mnm(rep.D_eta)),
            float(units.kg_to_g(rep.mass)),
        ))
    path = out / "sweep.csv"
    header = [cfg.sweep.vary, "K_eta_N_mm", "D_eta_mNm", "mass_g"]
    write_table_csv(path, header, rows)
    print(f"wrote {path} ({len(rows)} rows)")
    return 0


def _replace_assembly(base, **kw):
    from dataclasses import replace
    return replace(base, **kw)


def cmd_pattern(cfg: DesignConfig, args) -> int:
    _require_blocks(cfg, "pattern", "assembly")
    out = _out_dir(cfg, args)
    assembly = cfg.assembly.build(cfg.material)
    fab = cfg.constraints.L_fab if cfg.constraints is not None else None
    p1, p2, notes = assembly_kit(
        assembly, _tab_spec(cfg), fab_limit=fab,
        connector_allowance=cfg.model.connector_allowance,
        start=cfg.output.start_crease, kerf_mm=cfg.output.kerf_mm)
    for name, pattern in (("layer1", p1), ("layer2", p2)):
        path = out / f"{name}.svg"
        write_svg(pattern, path)
        print(f"wrote {path}")
        if cfg.output.emit_csv:
            cpath = out / f"{name}.csv"
            write_pattern_csv(pattern, cpath)
            print(f"wrote {cpath}")
    notes_path = out / "kit.json"
    write_record(notes_path, {"config": cfg.resolved, "notes": notes})
    print(f"wrote {notes_path}")
    return 0


def cmd_validate(cfg: DesignConfig, args) -> int:
    _require_blocks(cfg, "validate", "assembly", "constraints")
    out = _out_dir(cfg, args)
    a = cfg.assembly
    rep = check_feasible(cfg.material, a.W, a.alpha, a.n, cfg.constraints,
                         cfg.model.unit_count)
    rows = _feasibility_rows(rep)
    record = {
        "config": cfg.resolved,
        "candidate": {"W_mm": units.m_to_mm(a.W), "n": a.n,
                      "alpha_deg": units.rad_to_deg(a.alpha)},
        "checks": rows,
        "feasible": rep.feasible,
    }
    path = out / "validate.json"
    write_record(path, record)
    name_w = max(len(r["name"]) for r in rows)
    print(f"{'constraint':<{name_w}}  {'value':>12}  {'bound':>12}  "
          f"{'slack':>12}  unit   ok")
    for r in rows:
        print(f"{r['name']:<{name_w}}  {fmt6(r['value']):>12}  "
              f"{fmt6(r['bound']):>12}  {fmt6(r['slack']):>12}  "
              f"{r['unit']:<5}  {'yes' if r['ok'] else 'NO'}")
    print("FEASIBLE" if rep.feasible else "INFEASIBLE")
    print(f"wrote {path}")
    return 0


_COMMANDS = {
    "analyze": cmd_analyze,
    "optimize": cmd_optimize,
    "sweep": cmd_sweep,
    "pattern": cmd_pattern,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oadlc",
        description="Design toolkit for orthogonally assembled double-layered "
                    "corrugated mechanisms")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
            ("analyze", "stiffness, mass, and folded dimensions of one design"),
            ("optimize", "solve the constrained minimum-weight design problem"),
            ("sweep", "tabulate stiffness while varying one design parameter"),
            ("pattern", "emit ready-to-cut fold patterns for one design"),
            ("validate", "check one design against the constraint set")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="YAML configuration file")
        p.add_argument("--set", dest="overrides", action="append", default=[],
                       metavar="SECTION.KEY=VALUE",
                       help="override a config value (repeatable)")
        p.add_argument("--out", default=None, help="output directory")
        if name == "optimize":
            p.add_argument("--emit-pattern", action="store_true",
                           help="also write the fold-pattern kit for the optimum")
            p.add_argument("--exhaustive", action="store_true",
                           help="use the exhaustive grid search instead of the "
                                "default solver")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = parse_config(args.config, args.overrides)
        return _COMMANDS[args.command](cfg, args)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except (InfeasibleError, FabricationError) as err:
        print(f"infeasible: {err}", file=sys.stderr)
        return 3
    except DomainError as err:
        print(f"domain error: {err}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
