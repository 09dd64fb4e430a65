"""Report emission: delimited outputs (JSON/CSV) plus optional matplotlib
figures rendered next to them.

Figure rendering is an optional extra: importing matplotlib happens inside
render calls so the core library stays dependency-light.
"""

import csv
import io
import json

from . import SCHEMA


def degree_table_rows(reports):
    rows = []
    for r in reports:
        row = r.row()
        flat = {
            "g": row["g"], "ell": row["ell"], "parity": row["parity"],
            "nu": row["nu"],
            "deg_d": " ".join(str(d) for d in row["deg_d"]),
            "deg_e": " ".join(str(d) for d in row["deg_e"]),
            "pred_d0": row["pred_d0"], "pred_e0": row["pred_e0"],
            "conjecture_match": row["conjecture_match"],
            "lemma_bound_ok": row["lemma_bound_ok"],
            "consecutive": row["consecutive"],
            "span_ok": row["span_ok"],
        }
        rows.append(flat)
    return rows


def degree_table_csv(reports):
    rows = degree_table_rows(reports)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def degree_table_json(reports):
    return json.dumps({"schema": SCHEMA, "kind": "degree_table",
                       "rows": [r.row() for r in reports]},
                      indent=2, sort_keys=True)


def render_degree_figure(reports, path):
    """Measured vs predicted leading degrees, one marker per multiplier."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4.5))
    by_g = {}
    for r in reports:
        by_g.setdefault(r.g, []).append(r)
    for g, rs in sorted(by_g.items()):
        rs.sort(key=lambda r: r.n)
        ells = [r.n for r in rs]
        measured = [r.deg_d[-1] for r in rs]
        predicted = [r.pred_d0 for r in rs]
        ax.plot(ells, measured, "o", label=f"g={g} measured deg d0")
        ax.plot(ells, predicted, "-", alpha=0.6, label=f"g={g} predicted")
    ax.set_xlabel("multiplier")
    ax.set_ylabel("degree of the constant coefficient")
    ax.set_title("Division-polynomial coefficient degrees")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=140)
    plt.close(fig)
    return path


def render_zeta_figure(report, path):
    """Per-prime timing bars for a point-counting run."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    recs = [r for r in report.get("per_ell", []) if "seconds" in r]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar([str(r["ell"]) for r in recs], [r["seconds"] for r in recs],
           color="#4878a8")
    ax.set_xlabel("prime")
    ax.set_ylabel("seconds")
    ax.set_title(f"chi mod ell timings (q={report.get('q')}, g={report.get('g')})")
    fig.tight_layout()
    fig.savefig(path, dpi=140)
    plt.close(fig)
    return path


def render_torsion_figure(weights_degrees, path):
    """Resolution degree per weight."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.5))
    ws = sorted(weights_degrees)
    ax.bar([str(w) for w in ws], [weights_degrees[w] for w in ws],
           color="#6a9f58")
    ax.set_xlabel("weight")
    ax.set_ylabel("resolution degree")
    ax.set_title("torsion elements per weight")
    fig.tight_layout()
    fig.savefig(path, dpi=140)
    plt.close(fig)
    return path
