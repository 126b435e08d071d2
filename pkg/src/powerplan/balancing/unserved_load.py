"""Unserved load: a penalized slack in every zonal energy balance."""
from __future__ import annotations

import logging

from ..core.expr import linear_combine

logger = logging.getLogger(__name__)

DEFAULT_PENALTY = 10000.0


def define_arguments(parser):
    parser.add_argument(
        "--unserved-load-penalty",
        type=float,
        default=DEFAULT_PENALTY,
        help="cost of unserved energy in $/MWh (default %(default)s)",
    )


def define_components(m):
    penalty = float(m.option("unserved_load_penalty", DEFAULT_PENALTY))
    if penalty < 0:
        raise ValueError("unserved load penalty must be nonnegative")
    if penalty == 0:
        logger.warning("unserved load penalty is 0; the optimum may shed load freely")
    m.unserved_load_penalty = penalty
    v = m.add_vars("UnservedLoad", [(z, tp) for z in m.zones for tp in m.ts.timepoint_ids])
    m.add_expression("UnservedLoad", dict(v))
    m.add_expression(
        "UnservedLoadPenalty",
        {tp: linear_combine((penalty, v[z, tp]) for z in m.zones) for tp in m.ts.timepoint_ids},
    )
    m.register("injection", "UnservedLoad")
    m.register("cost-timepoint", "UnservedLoadPenalty")
