#!/usr/bin/env python3
"""Builds data/swiss2016: a 3-region x 3-sector MRIO calibrated so that the
Swiss per-capita footprints and budget shares land on the published 2016
orientation values (CH, EU, rest of world).

The table itself is invented. Extension vectors are solved as an
exponential tilt of plausible intensities so that three aggregates hold
exactly: Swiss PBA, Swiss CBA and the world total.

Run from the repository root:  python3 tools/make_swiss_fixture.py
"""

import hashlib
import json
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parent.parent / "data" / "swiss2016"

REGIONS = ["CH", "EU", "ROW"]
SECTORS = ["agriculture", "manufacturing", "services"]
POP = {"CH": 8.4e6, "EU": 512.0e6, "ROW": 6969.6e6}
WORLD_POP = sum(POP.values())

# Remaining CO2 budget, 1.5C / 50 %, 2016-2100 including the 2016-2019 backcast.
PB_CO2_GT = (395.0 + 168.0) / 84.0
PB_GHG_GT = PB_CO2_GT * 1.25
PB_WATER_KM3 = 4000.0
PB_BIO_PDF = 2.0e-12 * WORLD_POP

# Swiss per-capita targets: (pba, cba) and the CBA grandfathering budget per capita.
CO2 = dict(pba=5.1, cba=9.8, gf_cba=2.01)          # t CO2
GHG = dict(pba=6.4, cba=13.0, gf_cba=2.4)          # t CO2eq
WATER = dict(pba=28.35, cba=244.0, gf_cba=804.0)   # m3
BIO_WORLD_PC = 4.0e-12                             # PDF*yr per person
BIO = dict(pba=0.45 * BIO_WORLD_PC, cba=1.5 * BIO_WORLD_PC)

# Ability-to-pay share that yields 150 m3 per Swiss resident.
AP_SHARE_CH = 150.0 * POP["CH"] / (PB_WATER_KM3 * 1e9)


def origin_weight(importer, exporter):
    """Split of imports between the two foreign regions: the larger one dominates."""
    major = "EU" if importer == "ROW" else "ROW"
    return 0.7 if exporter == major else 0.3


def build_table():
    n, m = len(REGIONS), len(SECTORS)
    nm = n * m
    # Domestic technical coefficients (same recipe per region, scaled).
    dom = np.array([[0.10, 0.05, 0.01],
                    [0.12, 0.25, 0.06],
                    [0.08, 0.15, 0.20]])
    import_share = {"CH": 0.45, "EU": 0.15, "ROW": 0.04}
    a = np.zeros((nm, nm))
    for rc, col_region in enumerate(REGIONS):
        s_imp = import_share[col_region]
        for ro, row_region in enumerate(REGIONS):
            if ro == rc:
                block = dom * (1.0 - s_imp)
            else:
                block = dom * s_imp * origin_weight(col_region, row_region)
            a[ro * m:(ro + 1) * m, rc * m:(rc + 1) * m] = block

    # Final demand (M EUR) by consuming region; Switzerland imports heavily.
    scale = {"CH": 4.0e5, "EU": 1.1e7, "ROW": 4.5e7}
    mix = np.array([0.05, 0.35, 0.60])
    y = np.zeros((nm, n))
    for rc, cons in enumerate(REGIONS):
        s_imp = {"CH": 0.40, "EU": 0.10, "ROW": 0.03}[cons]
        for ro, prod in enumerate(REGIONS):
            if ro == rc:
                share = 1.0 - s_imp
            else:
                share = s_imp * origin_weight(cons, prod)
            y[ro * m:(ro + 1) * m, rc] = scale[cons] * mix * share

    x = np.linalg.solve(np.eye(nm) - a, y.sum(axis=1))
    z = a * x[None, :]
    # Round the published flows and make x their exact sum so rows balance.
    z = np.round(z, 3)
    y = np.round(y, 3)
    x = z.sum(axis=1) + y.sum(axis=1)
    return z, y, x


def solve_extension(z, y, x, base_intensity, hh_frac, ch_pba, ch_cba, world):
    """Exponential tilt of a positive baseline, f = f0 * exp(R' lam), hitting the
    three aggregates R f = b. Positivity holds by construction."""
    n, m = len(REGIONS), len(SECTORS)
    nm = n * m
    a = z / x[None, :]
    l = np.linalg.inv(np.eye(nm) - a)
    ly_ch = l @ y[:, 0]
    f0 = x * np.array([base_intensity[r][s] for r in REGIONS for s in range(m)])
    hh0 = np.array([hh_frac * f0[i * m:(i + 1) * m].sum() for i in range(n)])
    v0 = np.concatenate([f0, hh0])
    rows = np.zeros((3, nm + n))
    rows[0, 0:m] = 1.0
    rows[0, nm + 0] = 1.0
    rows[1, :nm] = ly_ch / x
    rows[1, nm + 0] = 1.0
    rows[2, :] = 1.0
    b = np.array([ch_pba, ch_cba, world])
    # Normalise each constraint so Newton works on relative residuals.
    rows_n = rows / b[:, None]
    lam = np.zeros(3)
    for _ in range(100):
        v = v0 * np.exp(rows_n.T @ lam)
        resid = rows_n @ v - 1.0
        if np.abs(resid).max() < 1e-13:
            break
        jac = (rows_n * v[None, :]) @ rows_n.T
        lam -= np.linalg.solve(jac, resid)
    else:
        raise SystemExit("extension calibration did not converge")
    return v[:nm], v[nm:]


def fmt(v):
    return repr(float(v))


def matrix_csv(values, col_top, col_bottom, corner_bottom="sector"):
    lines = ["region," + "," + ",".join(col_top), "," + corner_bottom + "," + ",".join(col_bottom)]
    for i, (r, s) in enumerate([(r, s) for r in REGIONS for s in SECTORS]):
        lines.append(f"{r},{s}," + ",".join(fmt(v) for v in values[i]))
    return "\n".join(lines) + "\n"


def main():
    z, y, x = build_table()
    cols_top = [r for r in REGIONS for _ in SECTORS]
    cols_bottom = [s for _ in REGIONS for s in SECTORS]
    files = {}
    files["z.csv"] = matrix_csv(z, cols_top, cols_bottom)
    files["y.csv"] = matrix_csv(y, REGIONS, ["final_demand"] * len(REGIONS))
    files["x.csv"] = "region,sector,x\n" + "".join(
        f"{r},{s},{fmt(x[i])}\n" for i, (r, s) in enumerate([(r, s) for r in REGIONS for s in SECTORS]))

    ch = POP["CH"]
    world_co2_kt = CO2["cba"] * PB_CO2_GT * 1e6 / CO2["gf_cba"]      # kt
    world_ghg_kt = GHG["cba"] * PB_GHG_GT * 1e6 / GHG["gf_cba"]
    world_water_mm3 = WATER["cba"] * PB_WATER_KM3 * 1e3 / WATER["gf_cba"]
    world_bio = BIO_WORLD_PC * WORLD_POP

    # Pressure per M EUR of output, by region and sector.
    carbon = {"CH": [0.08, 0.05, 0.01], "EU": [0.25, 0.35, 0.06], "ROW": [0.6, 1.1, 0.2]}
    water = {"CH": [0.6, 0.02, 0.005], "EU": [4.0, 0.1, 0.02], "ROW": [40.0, 0.5, 0.08]}
    land = {"CH": [2e-10, 1e-12, 1e-13], "EU": [6e-10, 5e-12, 5e-13], "ROW": [1.5e-9, 1e-11, 1e-12]}

    exts = []
    f, hh = solve_extension(z, y, x, carbon, 0.25, CO2["pba"] * ch / 1e3, CO2["cba"] * ch / 1e3, world_co2_kt)
    exts.append(("co2", "kt CO2", f, hh))
    f, hh = solve_extension(z, y, x, carbon, 0.22, GHG["pba"] * ch / 1e3, GHG["cba"] * ch / 1e3, world_ghg_kt)
    exts.append(("ghg", "kt CO2eq", f, hh))
    f, hh = solve_extension(z, y, x, water, 0.03, WATER["pba"] * ch / 1e6, WATER["cba"] * ch / 1e6, world_water_mm3)
    exts.append(("water", "Mm3", f, hh))
    f, hh = solve_extension(z, y, x, land, 0.01, BIO["pba"] * ch, BIO["cba"] * ch, world_bio)
    exts.append(("biodiversity", "PDF*yr", f, hh))

    top = ",," + ",".join(cols_top + REGIONS)
    bottom = "stressor,unit," + ",".join(cols_bottom + ["households"] * len(REGIONS))
    files["extensions.csv"] = "\n".join(
        [top, bottom] + [f"{name},{unit}," + ",".join(fmt(v) for v in np.concatenate([f, hh]))
                         for name, unit, f, hh in exts]) + "\n"

    # Region statistics; the rest-of-world value added is solved for the AP share.
    emp = {"CH": 5.0e6, "EU": 240.0e6, "ROW": 3000.0e6}
    va = {"CH": 600.0e9, "EU": 14.0e12}
    w = {r: emp[r] ** 1.5 / va[r] ** 0.5 for r in va}
    w_row = w["CH"] / AP_SHARE_CH - w["CH"] - w["EU"]
    va["ROW"] = (emp["ROW"] ** 1.5 / w_row) ** 2
    files["regions.csv"] = "entity,population,value_added,employment\n" + "".join(
        f"{r},{fmt(POP[r])},{fmt(va[r])},{fmt(emp[r])}\n" for r in REGIONS)

    va_mix = {"CH": [0.007, 0.25, 0.743], "EU": [0.017, 0.23, 0.753], "ROW": [0.07, 0.30, 0.63]}
    emp_mix = {"CH": [0.03, 0.20, 0.77], "EU": [0.045, 0.22, 0.735], "ROW": [0.30, 0.22, 0.48]}
    files["sectors.csv"] = "region,sector,value_added,employment\n" + "".join(
        f"{r},{s},{fmt(va[r] * va_mix[r][k])},{fmt(emp[r] * emp_mix[r][k])}\n"
        for r in REGIONS for k, s in enumerate(SECTORS))

    # Watersheds (Mm3/yr); LB = MAF - (HWC + EWR + 0.15 MAF).
    sheds = [
        ("rhine", 73000.0, 2600.0, 36000.0, {"CH": 95.0, "EU": 2400.0, "ROW": 105.0}),
        ("rhone", 54000.0, 1900.0, 30000.0, {"CH": 60.0, "EU": 1800.0, "ROW": 40.0}),
        ("indus", 180000.0, 160000.0, 40000.0, {"CH": 28.0, "EU": 900.0, "ROW": 159072.0}),
        ("nile", 84000.0, 66000.0, 21000.0, {"CH": 12.0, "EU": 600.0, "ROW": 65388.0}),
        ("mekong", 470000.0, 24000.0, 250000.0, {"CH": 9.0, "EU": 300.0, "ROW": 23691.0}),
    ]
    lines = ["unit_id,field,value"]
    for sid, maf, hwc, ewr, cons in sheds:
        lines += [f"{sid},MAF,{fmt(maf)}", f"{sid},HWC,{fmt(hwc)}", f"{sid},EWR,{fmt(ewr)}"]
        lines += [f"{sid},consumption:{c},{fmt(v)}" for c, v in cons.items()]
    files["watersheds.csv"] = "\n".join(lines) + "\n"

    # Ecoregions: protected / remaining-habitat fractions and loss in pico PDF*yr.
    ecos = [
        ("alps_conifer", 0.55, 0.20, "half_protected", {"CH": 1.2, "EU": 3.0, "ROW": 0.1}),
        ("western_european_broadleaf", 0.12, 0.45, "could_reach_half", {"CH": 2.5, "EU": 40.0, "ROW": 1.0}),
        ("po_basin_mixed", 0.08, 0.20, "could_recover", {"CH": 0.9, "EU": 12.0, "ROW": 0.4}),
        ("cerrado", 0.05, 0.15, "imperilled", {"CH": 3.0, "EU": 20.0, "ROW": 160.0}),
        ("borneo_lowland", 0.10, 0.25, "could_recover", {"CH": 1.4, "EU": 15.0, "ROW": 120.0}),
    ]
    lines = ["unit_id,field,value"]
    for eid, p, h, status, loss in ecos:
        lines += [f"{eid},protected_frac,{fmt(p)}", f"{eid},habitat_frac,{fmt(h)}", f"{eid},status,{status}"]
        lines += [f"{eid},loss:{c},{fmt(v)}" for c, v in loss.items()]
    files["ecoregions.csv"] = "\n".join(lines) + "\n"

    # Swiss history (extension units), 1995 and 2016.
    hist = [
        ("co2", "pba", CO2["pba"] * ch / 1e3 / 0.68, CO2["pba"] * ch / 1e3),
        ("co2", "cba", 98000.0, CO2["cba"] * ch / 1e3),
        ("ghg", "pba", 56000.0 * 1.6, GHG["pba"] * ch / 1e3),
        ("ghg", "cba", 125000.0, GHG["cba"] * ch / 1e3),
        ("water", "pba", 260.0, WATER["pba"] * ch / 1e6),
        ("water", "cba", 1900.0, WATER["cba"] * ch / 1e6),
    ]
    lines = ["entity,extension,perspective,year,value"]
    for ext, persp, v1995, v2016 in hist:
        lines += [f"CH,{ext},{persp},1995,{fmt(v1995)}", f"CH,{ext},{persp},2016,{fmt(v2016)}"]
    files["history.csv"] = "\n".join(lines) + "\n"

    # Household carbon footprints (t CO2 per household), log-normal.
    rng = np.random.default_rng(2016)
    hh_values = np.round(rng.lognormal(mean=np.log(20.0), sigma=0.7, size=120), 2)
    files["households.csv"] = "household_id,extension,value\n" + "".join(
        f"hh{k + 1:03d},co2,{fmt(v)}\n" for k, v in enumerate(hh_values))

    # Cities: population and per-city pressures in extension units.
    cities = [("zurich", 0.42e6, 1.00), ("geneva", 0.20e6, 1.10), ("basel", 0.17e6, 0.95),
              ("lausanne", 0.14e6, 0.90), ("bern", 0.13e6, 0.85)]
    # City budgets split the national one, so the remaining population is its own entity.
    cities.append(("rest_of_ch", POP["CH"] - sum(c[1] for c in cities), 1.0))
    header = ["city", "country", "population"]
    keys = [f"{e}/{p}" for e in ("co2", "ghg", "water", "biodiversity") for p in ("cba", "pba")]
    pc = {"co2/cba": CO2["cba"] / 1e3, "co2/pba": CO2["pba"] / 1e3, "ghg/cba": GHG["cba"] / 1e3,
          "ghg/pba": GHG["pba"] / 1e3, "water/cba": WATER["cba"] / 1e6, "water/pba": WATER["pba"] / 1e6,
          "biodiversity/cba": BIO["cba"], "biodiversity/pba": BIO["pba"]}
    lines = [",".join(header + keys + ["value_added", "employment"])]
    for name, pop, factor in cities:
        vals = [pc[k] * pop * factor for k in keys]
        lines.append(",".join([name, "CH", fmt(pop)] + [fmt(v) for v in vals] +
                              [fmt(pop * 80000.0 * factor), fmt(pop * 0.6)]))
    files["cities.csv"] = "\n".join(lines) + "\n"

    OUT.mkdir(parents=True, exist_ok=True)
    keymap = {"z.csv": "z", "y.csv": "y", "x.csv": "x", "extensions.csv": "extensions",
              "regions.csv": "regions", "sectors.csv": "sectors", "watersheds.csv": "watersheds",
              "ecoregions.csv": "ecoregions", "history.csv": "history",
              "households.csv": "households", "cities.csv": "cities"}
    manifest = {"base_year": 2016, "files": {}, "units": {}, "checksums": {}}
    for name, text in files.items():
        (OUT / name).write_text(text)
        key = keymap[name]
        manifest["files"][key] = name
        manifest["checksums"][key] = "sha256:" + hashlib.sha256(text.encode()).hexdigest()
    for name, unit, _, _ in exts:
        manifest["units"][name] = unit
    manifest = {k: dict(sorted(v.items())) if isinstance(v, dict) else v for k, v in manifest.items()}
    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
