"""Power transfers on transmission lines.

``DispatchTx[line, from_zone, tp]`` is the power sent from ``from_zone``
to the other end of the line, at most the derated line capacity. The
sending zone withdraws the full amount; the receiving zone gets
``efficiency`` times it (losses are taken at the receiving end).
"""
from __future__ import annotations

from collections import defaultdict

from ...core.expr import linear_combine
from ...core.output import write_table


def define_components(m):
    ts = m.ts
    m.dispatch_tx = {}
    sent, received = defaultdict(list), defaultdict(list)
    for name, ln in m.tx_lines.items():
        for frm, to in ((ln.zone_a, ln.zone_b), (ln.zone_b, ln.zone_a)):
            for tp in ts.timepoint_ids:
                v = m.add_var("DispatchTx", (name, frm, tp))
                m.dispatch_tx[name, frm, tp] = v
                cap = m.tx_capacity[name, ts.period_of(tp).label]
                m.add_constraint("Maximum_DispatchTx", (name, frm, tp), v, "<=", (1.0 - ln.derate) * cap)
                sent[frm, tp].append((1.0, v))
                received[to, tp].append((ln.efficiency, v))
    m.add_expression("TxPowerSent", {k: linear_combine(v) for k, v in sent.items()})
    m.add_expression("TxPowerReceived", {k: linear_combine(v) for k, v in received.items()})
    m.register("withdrawal", "TxPowerSent")
    m.register("injection", "TxPowerReceived")


def post_solve(m, solution, outdir):
    rows = []
    for (name, frm, tp), v in m.dispatch_tx.items():
        ln = m.tx_lines[name]
        to = ln.zone_b if frm == ln.zone_a else ln.zone_a
        sent = solution.value(v)
        rows.append([name, frm, to, m.ts.period_of(tp).label, tp, sent, sent * ln.efficiency])
    header = ["line", "from_zone", "to_zone", "period", "timepoint", "sent_mw", "delivered_mw"]
    return [write_table(outdir, "transmission_flows.csv", header, rows)]
