"""JSON Schemas (draft 2020-12) for the files written by the command line tool."""

_number_or_inf = {"oneOf": [{"type": "number"}, {"const": "inf"}]}

BARCODE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "interaction barcode",
    "type": "array",
    "items": {
        "type": "object",
        "required": ["degree", "bars"],
        "properties": {
            "degree": {"type": "integer", "minimum": 0},
            "field": {"enum": ["q", "f2"]},
            "bars": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["birth", "death"],
                    "properties": {"birth": {"type": "number"}, "death": _number_or_inf},
                    "additionalProperties": False,
                },
            },
        },
        "additionalProperties": False,
    },
}

_entry_common = {
    "degree": {"type": "integer", "minimum": 0},
    "nullity": {"type": "integer", "minimum": 0},
    "gap": {"type": "number", "minimum": 0},
    "eigenvalues": {"type": "array", "items": {"type": "number"}},
}

SPECTRA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "spectral series",
    "type": "array",
    "items": {
        "oneOf": [
            {
                "type": "object",
                "required": ["t", "degree", "nullity", "gap", "eigenvalues"],
                "properties": {"t": {"type": "number"}, **_entry_common},
                "additionalProperties": False,
            },
            {
                "type": "object",
                "required": ["a", "b", "degree", "nullity", "gap", "eigenvalues"],
                "properties": {"a": {"type": "number"}, "b": {"type": "number"}, **_entry_common},
                "additionalProperties": False,
            },
        ]
    },
}

WU = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Wu characteristic report",
    "type": "object",
    "required": ["omega", "pair_counts", "betti", "betti_alternating_sum", "consistent"],
    "properties": {
        "omega": {"type": "integer"},
        "pair_counts": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "betti": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "betti_alternating_sum": {"type": "integer"},
        "consistent": {"type": "boolean"},
    },
    "additionalProperties": False,
}

BENCHMARK_COLUMNS = ["pipeline", "degree", "seconds", "grid_points", "gap_sum"]
SPECTRA_COLUMNS = ["t", "degree", "nullity", "gap"]
BARCODE_COLUMNS = ["degree", "birth", "death"]
