"""Command-line driver: every experiment is a named, configured, reproducible
run emitting CSV/JSON artifacts plus a hashed manifest.

Subcommands: spectrum, winding, sweep, bloch, nls, ivp, ivp-map, field2d, wkb.

Configuration comes from an optional JSON file (--config) with command-line
flags taking precedence.  Unknown config keys are rejected.  Exit codes:
0 success, 2 configuration error, 3 numerical failure.  The default output
root is $WINDLAB_OUT or ./runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import bloch as bloch_mod
from . import ivp as ivp_mod
from . import nls as nls_mod
from . import spectral
from . import sweep as sweep_mod
from .core import (Grid1D, PotentialSpec, SpectralProblem, arc_contour, line_contour)
from .errors import ConfigError, WindlabError
from .io import write_csv, write_json, write_manifest
from .multidim import diagonal_winding, phase_field, separable_field
from .phase import unwrap_phase, winding_of, write_profile_csv

CLI_FAMILIES = {
    "square-well": "SquareWell",
    "shifted-ho": "ShiftedHO",
    "cubic-pt": "CubicPT",
    "linear-pt": "LinearPT",
    "periodic-pt": "PeriodicPT",
    "x-sin-x": "XSinX",
}

DOMAIN_DEFAULTS = {
    "SquareWell": (0.0, float(np.pi)),
    "ShiftedHO": (-10.0, 10.0),
    "CubicPT": (-1.0, 1.0),
    "LinearPT": (-np.pi / 2, np.pi / 2),
    "PeriodicPT": (0.0, float(np.pi)),
    "XSinX": (-np.pi / 2, np.pi / 2),
}

# published experiment-config schema: every key a run may carry, per experiment
SCHEMAS = {
    "spectrum": {"potential": str, "eps": float, "x_min": float, "x_max": float,
                 "grid": int, "modes": int, "bloch_k": float, "out": str},
    "winding": {"potential": str, "mode": int, "contour": str, "points": int,
                "grid": int, "out": str},
    "sweep": {"potential": str, "eps": str, "eps_min": float, "eps_max": float,
              "steps": int, "modes": int, "grid": int, "profile_mode": int, "out": str},
    "bloch": {"eps": float, "k_min": float, "k_max": float, "k_steps": int,
              "modes": int, "waves": int, "edge_scan": bool, "eps_ladder": str,
              "profile_band": int, "bessel_k": float, "out": str},
    "nls": {"sigma": int, "k": float, "power": float, "eps_list": str,
            "modes": int, "grid": int, "out": str},
    "ivp": {"a_re": float, "a_im": float, "b": float, "x_max": float, "tol": float,
            "family": str, "pairing_eps": float, "y0": float, "out": str},
    "ivp-map": {"re": str, "im": str, "grid": str, "x_max": float, "tol": float,
                "jobs": int, "out": str},
    "field2d": {"family": str, "indices": str, "shifts": str, "x_min": float,
                "x_max": float, "points": int, "out": str},
    "wkb": {"n": int, "half_width": float, "eps_pot": float, "points": int,
            "fd_check": bool, "fd_grid": int, "out": str},
}


def _load_config(experiment: str, path, overrides: dict) -> dict:
    schema = SCHEMAS[experiment]
    config = {}
    if path:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
        if not isinstance(raw, dict):
            raise ConfigError("config file must hold a JSON object")
        for key, value in raw.items():
            if key not in schema:
                raise ConfigError(f"unknown config key {key!r} for {experiment}")
            config[key] = value
    for key, value in overrides.items():
        if value is None:
            continue
        if key not in schema:
            raise ConfigError(f"unknown option {key!r} for {experiment}")
        config[key] = value
    for key, value in config.items():
        want = schema[key]
        try:
            config[key] = want(value) if not isinstance(value, want) else value
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"config key {key!r}: {exc}") from exc
    return config


def _trim_ends(values: np.ndarray, rel: float = 1e-9) -> np.ndarray:
    """Drop the contiguous near-zero stretches at both ends (boundary zeros)."""
    mag = np.abs(values)
    tol = rel * mag.max()
    lo, hi = 0, values.size
    while lo < hi and mag[lo] < tol:
        lo += 1
    while hi > lo and mag[hi - 1] < tol:
        hi -= 1
    return values[lo:hi]


def _out_dir(config: dict, experiment: str) -> Path:
    root = config.get("out") or os.environ.get("WINDLAB_OUT", "runs")
    out = Path(root) / experiment if not config.get("out") else Path(config["out"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def _problem(config: dict, default_grid=2001) -> SpectralProblem:
    name = config.get("potential", "square-well")
    if name not in CLI_FAMILIES:
        raise ConfigError(f"unknown potential {name!r}; choose from {sorted(CLI_FAMILIES)}")
    family = CLI_FAMILIES[name]
    x_min = config.get("x_min", DOMAIN_DEFAULTS[family][0])
    x_max = config.get("x_max", DOMAIN_DEFAULTS[family][1])
    eps = config.get("eps", 0.0)
    if family == "CubicPT" and "eps" not in config:
        eps = 1.0
    return SpectralProblem(
        potential=PotentialSpec(family, epsilon=eps),
        domain=Grid1D(x_min, x_max, default_grid),
        boundary="Dirichlet",
    )


def run_spectrum(config: dict) -> list:
    out = _out_dir(config, "spectrum")
    problem = _problem(config)
    n = config.get("grid", 600)
    modes = config.get("modes", 6)
    spec = spectral.solve_linear_spectrum(problem, n, modes)
    files = []
    records = []
    x = spectral.sample_points(problem, n)
    for pair in spec.pairs:
        csv = out / f"mode_{pair.index:03d}.csv"
        write_csv(csv, ["x", "re_psi", "im_psi"],
                  [(xi, v.real, v.imag) for xi, v in zip(x, pair.psi.values)])
        files.append(csv)
        try:
            w = winding_of(pair.psi.values, max_step=3.0).winding
        except WindlabError:
            w = float("nan")
        records.append({"index": pair.index, "re_e": pair.energy.real,
                        "im_e": pair.energy.imag, "winding": w,
                        "samples": csv.name})
    j = write_json(out / "spectrum.json", {"modes": records})
    files.append(j)
    files.append(write_manifest(out, "spectrum", _manifest_config(config), files))
    return files


def run_winding(config: dict) -> list:
    out = _out_dir(config, "winding")
    mode = config.get("mode", 3)
    contour_spec = config.get("contour", "im=0.2")
    points = config.get("points", 4001)
    problem = _problem(config)
    a, b = problem.domain.x_min, problem.domain.x_max
    kind, _, value = contour_spec.partition("=")
    height = float(value)
    if kind == "im":
        if problem.potential.family != "SquareWell":
            raise ConfigError("line contours need the square well's exact boundary data;"
                              " use contour arc=H for other potentials")
        contour = line_contour(a, b, height, points)
        z0 = complex(a, height)
        energy = float(mode * mode)
        psi0 = np.sin(mode * z0)
        dpsi0 = mode * np.cos(mode * z0)
    elif kind == "arc":
        contour = arc_contour(a, b, height, points)
        energy = complex(spectral.eigenvalues_only(problem, config.get("grid", 600), mode)[mode - 1])
        psi0, dpsi0 = 0.0, 1.0
    else:
        raise ConfigError("contour must look like im=0.2 or arc=0.3")
    psi = spectral.integrate_along_contour(problem, contour, energy, psi0, dpsi0)
    if kind == "arc":
        report = winding_of(_trim_ends(psi.values), max_step=3.0)
    else:
        report = winding_of(psi.values, max_step=3.0)
    files = []
    csv = out / "contour_samples.csv"
    write_csv(csv, ["t", "re_z", "im_z", "re_psi", "im_psi"],
              [(t, z.real, z.imag, v.real, v.imag)
               for t, z, v in zip(contour.t_grid.points(), contour.z(), psi.values)])
    files.append(csv)
    j = write_json(out / "winding.json", {
        "mode": mode, "contour": contour_spec,
        "re_energy": complex(energy).real, "im_energy": complex(energy).imag,
        "winding": report.winding, "winding_over_pi": report.winding / np.pi,
        "min_magnitude": report.min_magnitude, "aliasing_margin": report.aliasing_margin,
    })
    files.append(j)
    files.append(write_manifest(out, "winding", _manifest_config(config), files))
    return files


def run_sweep(config: dict) -> list:
    out = _out_dir(config, "sweep")
    problem = _problem(config)
    if config.get("eps"):  # lo:hi:steps shorthand
        lo, _, rest = config["eps"].partition(":")
        hi, _, st = rest.partition(":")
        config = dict(config, eps_min=float(lo), eps_max=float(hi),
                      steps=int(st or 40))
    eps_min = config.get("eps_min", 0.05)
    eps_max = config.get("eps_max", 2.0)
    steps = config.get("steps", 40)
    modes = config.get("modes", 6)
    n = config.get("grid", 301)
    result = sweep_mod.track_spectrum(problem, eps_min, eps_max, steps, modes,
                                      n_grid=n, max_phase_step=3.0)
    files = []
    for name, data in (("re_e", result.energies.real), ("im_e", result.energies.imag),
                       ("winding", result.windings)):
        csv = out / f"tracks_{name}.csv"
        header = ["eps"] + [f"mode_{m + 1}" for m in range(modes)]
        write_csv(csv, header,
                  [(e, *row) for e, row in zip(result.epsilons, data)])
        files.append(csv)
    j = write_json(out / "tracks.json", {
        "epsilons": result.epsilons.tolist(),
        "tracks": [{"mode": m + 1,
                    "re_e": result.energies[:, m].real.tolist(),
                    "im_e": result.energies[:, m].imag.tolist(),
                    "winding": result.windings[:, m].tolist()}
                   for m in range(modes)],
    })
    files.append(j)
    eps_points = sweep_mod.detect_exceptional_points(
        problem, eps_min, eps_max, coarse_steps=steps, n_modes=modes, n_grid=n)
    j = write_json(out / "exceptional_points.json", {
        "points": [{"epsilon": p.epsilon_star, "mode_pair": list(p.mode_pair),
                    "gap": p.gap_at_star} for p in eps_points],
        "events": len(result.events),
    })
    files.append(j)
    pm = config.get("profile_mode", 0)
    if pm:
        for i, e in enumerate(result.epsilons):
            spec = spectral.solve_linear_spectrum(
                sweep_mod._with_epsilon(problem, e), n, pm)
            try:
                prof = unwrap_phase(spec[pm - 1].psi.values, max_step=3.0)
            except WindlabError:
                continue
            csv = out / f"phase_mode{pm}_eps{i:03d}.csv"
            write_profile_csv(prof, csv, x=spectral.sample_points(problem, n))
            files.append(csv)
    files.append(write_manifest(out, "sweep", _manifest_config(config), files))
    return files


def run_bloch(config: dict) -> list:
    out = _out_dir(config, "bloch")
    eps = config.get("eps", 0.25)
    k_min = config.get("k_min", -1.0)
    k_max = config.get("k_max", 1.0)
    k_steps = config.get("k_steps", 21)
    modes = config.get("modes", 6)
    waves = config.get("waves", 25)
    files = []
    rows = []
    for k in np.linspace(k_min, k_max, k_steps):
        for bp in bloch_mod.bloch_bands(eps, float(k), modes, n_waves=waves):
            rows.append((bp.k, str(bp.band_index), bp.energy.real, bp.energy.imag,
                         bp.winding))
    csv = out / "bands.csv"
    write_csv(csv, ["k", "band", "re_e", "im_e", "winding"], rows)
    files.append(csv)
    meta = {"eps": eps}
    if config.get("edge_scan"):
        star = bloch_mod.band_edge_breaking(0.05, 1.0, k_edge=1.0, n_waves=waves)
        meta["edge_breaking_eps"] = star
    if config.get("bessel_k") is not None:
        grid = Grid1D(0.0, float(np.pi), 2001)
        u = bloch_mod.bessel_mode(config["bessel_k"], eps, grid)
        bcsv = out / "bessel_mode.csv"
        write_csv(bcsv, ["x", "re_u", "im_u"],
                  [(x, v.real, v.imag) for x, v in zip(grid.points(), u.values)])
        files.append(bcsv)
        meta["bessel_winding"] = winding_of(u.values).winding
    ladder = config.get("eps_ladder")
    if ladder:
        band = config.get("profile_band", 1)
        for i, e in enumerate(float(s) for s in ladder.split(",")):
            bp = bloch_mod.bloch_bands(e, config.get("k_min", 0.5), band, n_waves=waves)[band - 1]
            psi = bp.u.values * np.exp(1j * bp.k * bp.u.abscissae())
            try:
                prof = unwrap_phase(psi, max_step=3.0)
            except WindlabError:
                continue
            pcsv = out / f"phase_band{band}_eps{i:03d}.csv"
            write_profile_csv(prof, pcsv, x=bp.u.abscissae())
            files.append(pcsv)
    j = write_json(out / "bloch.json", meta)
    files.append(j)
    files.append(write_manifest(out, "bloch", _manifest_config(config), files))
    return files


def run_nls(config: dict) -> list:
    out = _out_dir(config, "nls")
    sigma = config.get("sigma", 1)
    k = config.get("k", 0.9)
    power = config.get("power", 0.3)
    modes = config.get("modes", 3)
    n = config.get("grid", 192)
    eps_list = [float(s) for s in config.get("eps_list", "0.25,0.5,0.75,1.0").split(",")]
    files = []
    states = []
    for i, eps in enumerate(eps_list):
        bands = bloch_mod.bloch_bands(eps, k, modes)
        for m in range(modes):
            state = nls_mod.solve_stationary_state(eps, k, sigma, power, bands[m], n=n)
            x = state.psi.abscissae()
            csv = out / f"psi_eps{i:03d}_state{m + 1}.csv"
            write_csv(csv, ["x", "re_psi", "im_psi"],
                      [(xi, v.real, v.imag) for xi, v in zip(x, state.psi.values)])
            files.append(csv)
            try:
                prof = unwrap_phase(state.psi.values, max_step=3.0)
                pcsv = out / f"phase_eps{i:03d}_state{m + 1}.csv"
                write_profile_csv(prof, pcsv, x=x)
                files.append(pcsv)
                w = prof.theta[-1] - prof.theta[0]
            except WindlabError:
                w = float("nan")
            states.append({"eps": eps, "state": m + 1, "re_e": state.energy.real,
                           "im_e": state.energy.imag, "power": state.power,
                           "residual": state.residual, "winding": w})
    j = write_json(out / "states.json", {"sigma": sigma, "k": k, "power": power,
                                         "states": states})
    files.append(j)
    files.append(write_manifest(out, "nls", _manifest_config(config), files))
    return files


def run_ivp(config: dict) -> list:
    out = _out_dir(config, "ivp")
    files = []
    meta = {}
    if config.get("pairing_eps") is not None:
        eps = config["pairing_eps"]
        plus, minus = ivp_mod.make_pair(eps, y0=config.get("y0", 1.6),
                                        x_max=config.get("x_max", 60.0))
        csv = out / "pair.csv"
        write_csv(csv, ["x", "re_y_plus", "im_y_plus", "re_y_minus", "im_y_minus"],
                  [(x, p.real, p.imag, m.real, m.imag)
                   for x, p, m in zip(plus.x, plus.y, minus.y)])
        files.append(csv)
        offset, misfit = ivp_mod.pairing_offset(plus, minus)
        meta.update({"pairing_eps": eps, "offset": offset, "misfit": misfit})
    elif config.get("family"):
        lo, _, hi = config["family"].partition(":")
        a = config.get("a_re", 0.1)
        members = []
        for n in range(int(lo), int(hi) + 1):
            if n == 0:
                continue
            traj = ivp_mod.shifted_family(a, [n], x_max=config.get("x_max"))[0]
            csv = out / f"family_n{n:+03d}.csv"
            write_csv(csv, ["x", "re_y", "im_y"],
                      [(x, v.real, v.imag) for x, v in zip(traj.x, traj.y)])
            files.append(csv)
            members.append({"n": n, "b": traj.b,
                            "extrema": ivp_mod.count_extrema(traj)})
        meta.update({"a": a, "members": members})
    else:
        a = complex(config.get("a_re", 0.0), config.get("a_im", 0.0))
        traj = ivp_mod.integrate_cosine_ivp(a, b=config.get("b", 0.0),
                                            x_max=config.get("x_max", 20.0),
                                            tol=config.get("tol", 1e-10))
        csv = out / "trajectory.csv"
        write_csv(csv, ["x", "re_y", "im_y"],
                  [(x, v.real, v.imag) for x, v in zip(traj.x, traj.y)])
        files.append(csv)
        try:
            w = ivp_mod.ivp_winding(traj).winding
        except WindlabError:
            w = float("nan")
        meta.update({"a_re": a.real, "a_im": a.imag, "b": config.get("b", 0.0),
                     "winding": w, "steps": traj.n_steps,
                     "extrema": ivp_mod.count_extrema(traj)})
    j = write_json(out / "ivp.json", meta)
    files.append(j)
    files.append(write_manifest(out, "ivp", _manifest_config(config), files))
    return files


def _map_block(args):
    cells, x_max, tol, n_out = args
    return ivp_mod.map_block_windings(cells, x_max, tol, n_out)


def run_ivp_map(config: dict) -> list:
    out = _out_dir(config, "ivp-map")
    re_lo, _, re_hi = config.get("re", "0:3").partition(":")
    im_lo, _, im_hi = config.get("im", "-1:1").partition(":")
    g = config.get("grid", "81x41")
    n_re, _, n_im = g.partition("x")
    n_re, n_im = int(n_re), int(n_im)
    x_max = config.get("x_max", 20.0)
    tol = config.get("tol", 1e-8)
    jobs = config.get("jobs", 1)
    re_lo, re_hi, im_lo, im_hi = map(float, (re_lo, re_hi, im_lo, im_hi))
    re = re_lo + (re_hi - re_lo) * (np.arange(n_re) + 0.5) / n_re
    im = im_lo + (im_hi - im_lo) * (np.arange(n_im) + 0.5) / n_im
    RE, IM = np.meshgrid(re, im, indexing="ij")
    cells = (RE + 1j * IM).ravel()
    blocks = [cells[i:i + ivp_mod.MAP_BLOCK]
              for i in range(0, cells.size, ivp_mod.MAP_BLOCK)]
    args = [(b, x_max, tol, 4097) for b in blocks]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_map_block, args))
    else:
        parts = [_map_block(a) for a in args]
    w = np.concatenate(parts).reshape(n_re, n_im)
    rows = []
    counts = {}
    for i in range(n_re):
        for j in range(n_im):
            label, _ = ivp_mod._quantize(w[i, j])
            counts[label] = counts.get(label, 0) + 1
            rows.append((re[i], im[j], w[i, j], label))
    files = []
    csv = out / "map.csv"
    write_csv(csv, ["re_a", "im_a", "winding", "class"], rows)
    files.append(csv)
    j = write_json(out / "map.json", {
        "re": [re_lo, re_hi], "im": [im_lo, im_hi], "n_re": n_re, "n_im": n_im,
        "x_max": x_max, "classes": counts,
    })
    files.append(j)
    files.append(write_manifest(out, "ivp-map", _manifest_config(config), files))
    return files


def run_field2d(config: dict) -> list:
    out = _out_dir(config, "field2d")
    fam = {"square-well": "SquareWell", "oscillator": "HarmonicOscillator"}[
        config.get("family", "square-well")]
    a1, _, a2 = config.get("indices", "3,2").partition(",")
    e1, _, e2 = config.get("shifts", "-1,-1").partition(",")
    if fam == "SquareWell":
        lo, hi = 0.0, float(np.pi)
    else:
        lo, hi = -8.0, 8.0
    lo = config.get("x_min", lo)
    hi = config.get("x_max", hi)
    npts = config.get("points", 801)
    grid = Grid1D(lo, hi, npts)
    field = separable_field(fam, (int(a1), int(a2)), (grid, grid),
                            (float(e1), float(e2)))
    theta, report = phase_field(field)
    files = []
    csv = out / "phase.csv"
    write_csv(csv, [f"c{j}" for j in range(theta.shape[1])],
              [tuple(row) for row in theta])
    files.append(csv)
    j = write_json(out / "field.json", {
        "family": config.get("family", "square-well"),
        "indices": [int(a1), int(a2)], "shifts": [float(e1), float(e2)],
        "grid": {"x_min": lo, "x_max": hi, "n_points": npts},
        "diagonal_winding": report.winding,
        "diagonal_winding_over_pi": report.winding / np.pi,
    })
    files.append(j)
    files.append(write_manifest(out, "field2d", _manifest_config(config), files))
    return files


def run_wkb(config: dict) -> list:
    out = _out_dir(config, "wkb")
    n = config.get("n", 20)
    L = config.get("half_width", 1.0)
    eps_pot = config.get("eps_pot", 1.0)
    npts = config.get("points", 200001)
    problem = SpectralProblem(
        potential=PotentialSpec("CubicPT", epsilon=eps_pot),
        domain=Grid1D(-L, L, 2001), boundary="Dirichlet")
    energy = spectral.wkb_eigenvalue(n, problem)
    grid = Grid1D(-L, L, npts)
    psi = spectral.wkb_eigenfunction(n, problem, grid)
    vals = psi.values
    report = winding_of(_trim_ends(vals, rel=1e-4), max_step=3.0)
    meta = {"n": n, "half_width": L, "wkb_energy": energy,
            "winding": report.winding, "winding_over_pi": report.winding / np.pi}
    if config.get("fd_check"):
        m = config.get("fd_grid", 48 * n - 1)
        w = spectral.eigenvalues_only(problem, m, n)
        meta["fd_re_energy"] = float(w[n - 1].real)
        meta["fd_rel_deviation"] = abs(float(w[n - 1].real) - energy) / energy
    files = []
    step = max(1, npts // 4001)
    csv = out / "wkb_mode.csv"
    write_csv(csv, ["x", "re_psi", "im_psi"],
              [(x, v.real, v.imag)
               for x, v in zip(grid.points()[::step], vals[::step])])
    files.append(csv)
    j = write_json(out / "wkb.json", meta)
    files.append(j)
    files.append(write_manifest(out, "wkb", _manifest_config(config), files))
    return files


def _manifest_config(config: dict) -> dict:
    # the output location is run metadata, not experiment configuration; leaving
    # it out keeps re-runs byte-identical wherever they land
    return {k: v for k, v in config.items() if k != "out"}


RUNNERS = {
    "spectrum": run_spectrum,
    "winding": run_winding,
    "sweep": run_sweep,
    "bloch": run_bloch,
    "nls": run_nls,
    "ivp": run_ivp,
    "ivp-map": run_ivp_map,
    "field2d": run_field2d,
    "wkb": run_wkb,
}


def run(experiment: str, config: dict) -> list:
    """Validate a config against the experiment schema and execute the run."""
    if experiment not in RUNNERS:
        raise ConfigError(f"unknown experiment {experiment!r}")
    validated = _load_config(experiment, None, config)
    return RUNNERS[experiment](validated)


def _add_common(p):
    p.add_argument("--config", help="JSON config file; flags override its values")
    p.add_argument("--out", help="output directory (default $WINDLAB_OUT/<experiment>)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="windlab",
                                 description="winding-number experiments")
    sub = ap.add_subparsers(dest="experiment", required=True)

    p = sub.add_parser("spectrum", help="solve a linear spectrum, emit modes + windings")
    p.add_argument("--potential", default=None)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--x-min", dest="x_min", type=float, default=None)
    p.add_argument("--x-max", dest="x_max", type=float, default=None)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--modes", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("winding", help="contour-transport winding of one mode")
    p.add_argument("--potential", default=None)
    p.add_argument("--mode", type=int, default=None)
    p.add_argument("--contour", default=None, help="im=H (square well) or arc=H")
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--grid", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("sweep", help="eps sweep: tracks + exceptional points")
    p.add_argument("--potential", default=None)
    p.add_argument("--eps", default=None, help="lo:hi:steps shorthand")
    p.add_argument("--eps-min", dest="eps_min", type=float, default=None)
    p.add_argument("--eps-max", dest="eps_max", type=float, default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--modes", type=int, default=None)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--profile-mode", dest="profile_mode", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("bloch", help="lattice bands, band-edge scan, Bessel mode")
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--k-min", dest="k_min", type=float, default=None)
    p.add_argument("--k-max", dest="k_max", type=float, default=None)
    p.add_argument("--k-steps", dest="k_steps", type=int, default=None)
    p.add_argument("--modes", type=int, default=None)
    p.add_argument("--waves", type=int, default=None)
    p.add_argument("--edge-scan", dest="edge_scan", action="store_const", const=True,
                   default=None)
    p.add_argument("--eps-ladder", dest="eps_ladder", default=None)
    p.add_argument("--profile-band", dest="profile_band", type=int, default=None)
    p.add_argument("--bessel-k", dest="bessel_k", type=float, default=None)
    _add_common(p)

    p = sub.add_parser("nls", help="nonlinear stationary states along an eps ladder")
    p.add_argument("--sigma", type=int, default=None)
    p.add_argument("--k", type=float, default=None)
    p.add_argument("--power", type=float, default=None)
    p.add_argument("--eps-list", dest="eps_list", default=None)
    p.add_argument("--modes", type=int, default=None)
    p.add_argument("--grid", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("ivp", help="cosine IVP: trajectory, shifted family, or pairing")
    p.add_argument("--a-re", dest="a_re", type=float, default=None)
    p.add_argument("--a-im", dest="a_im", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--x-max", dest="x_max", type=float, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--family", default=None, help="index range lo:hi")
    p.add_argument("--pairing-eps", dest="pairing_eps", type=float, default=None)
    p.add_argument("--y0", type=float, default=None)
    _add_common(p)

    p = sub.add_parser("ivp-map", help="winding classes over complex initial values")
    p.add_argument("--re", default=None, help="lo:hi")
    p.add_argument("--im", default=None, help="lo:hi")
    p.add_argument("--grid", default=None, help="NxM cells")
    p.add_argument("--x-max", dest="x_max", type=float, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--jobs", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("field2d", help="separable 2D field phase map")
    p.add_argument("--family", default=None, help="square-well or oscillator")
    p.add_argument("--indices", default=None, help="a1,a2")
    p.add_argument("--shifts", default=None, help="eps1,eps2")
    p.add_argument("--x-min", dest="x_min", type=float, default=None)
    p.add_argument("--x-max", dest="x_max", type=float, default=None)
    p.add_argument("--points", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("wkb", help="high-mode estimate for the imaginary cubic potential")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--half-width", dest="half_width", type=float, default=None)
    p.add_argument("--eps-pot", dest="eps_pot", type=float, default=None)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--fd-check", dest="fd_check", action="store_const", const=True,
                   default=None)
    p.add_argument("--fd-grid", dest="fd_grid", type=int, default=None)
    _add_common(p)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    experiment = ns.experiment
    overrides = {k: v for k, v in vars(ns).items()
                 if k not in ("experiment", "config") and v is not None}
    try:
        config = _load_config(experiment, ns.config, overrides)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        files = RUNNERS[experiment](config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (WindlabError, np.linalg.LinAlgError) as exc:
        report = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(report), file=sys.stderr)
        return 3
    for f in files:
        print(f)
    return 0


if __name__ == "__main__":
    sys.exit(main())
