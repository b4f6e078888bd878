"""CSV tables, rendered figures and standalone plot scripts."""

import math
from pathlib import Path

from onebit_dl.harness import plotting

# name -> (csv header, x column, x label)
FIGURES = {
    "fig1": ("fig1_cost.csv", ("iteration", "mu", "variant", "cost"), None, None),
    "fig2": ("fig2_nmse.csv", ("T", "variant", "nmse_db", "trials_ok"), "T", "number of training signals T"),
    "fig3": ("fig3_nmse.csv", ("n", "variant", "nmse_db", "trials_ok"), "n", "number of sign measurements n"),
    "single": ("single.csv", ("variant", "nmse_db", "sign_consistency", "final_cost", "wall_time"), None, None),
}


def fmt(value):
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "-inf" if value < 0 else "inf"
    return f"{value:.10g}"


def write_csv(path, header, rows):
    lines = [",".join(header)]
    lines += [",".join(fmt(row[col]) for col in header) for row in rows]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


_SCRIPT = '''\
"""Render {png} from {csv}. Usage: python {script}"""
import csv
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = Path(__file__).resolve().parent
with open(here / "{csv}", newline="") as fh:
    rows = list(csv.DictReader(fh))

fig, ax = plt.subplots(figsize=(4.8, 3.4), constrained_layout=True)
{body}
ax.grid(alpha=0.3)
ax.legend(fontsize=8)
fig.savefig(here / "{png}", dpi=150)
'''

_FIG1_BODY = '''\
for key in sorted({(r["variant"], float(r["mu"])) for r in rows}):
    sel = [r for r in rows if (r["variant"], float(r["mu"])) == key]
    ax.plot([int(r["iteration"]) for r in sel], [float(r["cost"]) for r in sel],
            label="DL-BIHT-%s, mu=%g" % (key[0].upper(), key[1]))
ax.set_yscale("log")
ax.set_xlabel("iteration")
ax.set_ylabel("cost J(D)")'''

_NMSE_BODY = '''\
for variant in dict.fromkeys(r["variant"] for r in rows):
    sel = [r for r in rows if r["variant"] == variant]
    ax.plot([float(r["{x}"]) for r in sel], [float(r["nmse_db"]) for r in sel], marker="o", label=variant)
ax.set_xlabel("{xlabel}")
ax.set_ylabel("NMSE (dB)")'''


def emit_outputs(tables, out_dir):
    """Write each ``{figure name: rows}`` table as CSV, PNG and plot script.

    Returns the list of written paths. I/O failures surface as ``OSError``
    naming the offending path.
    """
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from exc
    written = []
    for name, rows in tables.items():
        csv_name, header, x, xlabel = FIGURES[name]
        csv_path = out / csv_name
        try:
            write_csv(csv_path, header, rows)
            written.append(csv_path)
            if name == "single":
                continue
            png = out / f"{name}.png"
            script = out / f"plot_{name}.py"
            if name == "fig1":
                plotting.plot_convergence(rows, png)
                body = _FIG1_BODY
            else:
                plotting.plot_nmse(rows, x, png, xlabel)
                body = _NMSE_BODY.replace("{x}", x).replace("{xlabel}", xlabel)
            script.write_text(
                _SCRIPT.format(csv=csv_name, png=png.name, script=script.name, body=body),
                encoding="utf-8",
            )
            written += [png, script]
        except OSError as exc:
            raise OSError(f"failed writing {name} outputs under {out}: {exc}") from exc
    return written
