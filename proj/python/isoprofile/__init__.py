"""Upper bounds on the isoperimetric profile of simple polygons."""

import json

from ._isoprofile import (
    Analysis,
    InputError,
    Params,
    Region,
    StructuralError,
    analyze,
    load_polygon,
    necks_json,
    normalized_area,
    parse_polygon,
    run,
    tv_perimeter,
    tv_study,
)

__all__ = [
    "Analysis",
    "InputError",
    "Params",
    "Region",
    "StructuralError",
    "analyze",
    "load_polygon",
    "necks",
    "normalized_area",
    "parse_polygon",
    "report",
    "run",
    "tv_perimeter",
    "tv_study",
]

__version__ = "0.1.0"


def report(analysis):
    """The report.json body as a dict."""
    return json.loads(analysis.report_json)


def necks(region):
    return json.loads(necks_json(region))
