#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Writes the JSON schemas for every emitted artifact into schemas/."""

import json
import pathlib

UINT = {"type": "integer", "minimum": 0}
POS = {"type": "integer", "minimum": 1}
INT = {"type": "integer"}
NUM = {"type": "number", "minimum": 0}
POINT = {"type": "array", "items": INT, "minItems": 2, "maxItems": 2}


def obj(props, required=None):
    return {
        "type": "object",
        "properties": props,
        "required": sorted(required if required is not None else props),
        "additionalProperties": False,
    }


def arr(items, **kw):
    return {"type": "array", "items": items, **kw}


GATES = ["H", "X", "T", "Tdg", "S", "CX", "CY", "CZ", "CV", "CVdg", "Toffoli",
         "Measure", "PrepZ"]
KINDS = ["STRAIGHT_H", "STRAIGHT_V", "TURN", "TEE", "CROSS", "GATE_STRAIGHT_H",
         "GATE_STRAIGHT_V", "DEAD_END"]

SCHEMAS = {
    "netlist": obj({
        "qubit_count": UINT,
        "instructions": arr(obj({"id": POS, "kind": {"enum": GATES},
                                 "controls": arr(UINT), "target": UINT})),
    }),
    "dataflow": obj({
        "nodes": arr(POS),
        "edges": arr(arr(POS, minItems=2, maxItems=2)),
    }),
    "schedule": obj({
        "horizon": UINT,
        "stage_count": UINT,
        "lower_bound": UINT,
        "horizons_tried": arr(UINT),
        "nodes_explored": UINT,
        "stages": arr(obj({"stage": POS, "instruction_ids": arr(POS)})),
    }, required=["horizon", "stages"]),
    "qfg": obj({
        "nodes": arr(obj({"id": POS, "stage": POS})),
        "edges": arr(obj({"from": POS, "to": POS, "qubit": UINT})),
        "qubits": arr(obj({"qubit": UINT, "first": POS, "last": POS})),
    }),
    "drawing": obj({
        "nodes": arr(obj({"id": POS, "x": INT, "y": INT})),
        "edges": arr(obj({"from": POS, "to": POS, "qubit": UINT,
                          "points": arr(POINT, minItems=2)})),
        "crossings": arr(POINT),
        "bends": UINT,
        "total_length": UINT,
    }),
    "layout": obj({
        "width": UINT,
        "height": UINT,
        "scale": POS,
        "blocks": arr(obj({"x": UINT, "y": UINT, "kind": {"enum": KINDS},
                           "ports": {"type": "string", "pattern": "^N?E?S?W?$"},
                           "gate": {"type": "boolean"}})),
        "gate_locations": arr(obj({"instruction": POS, "x": UINT, "y": UINT})),
        "placement": arr(obj({"qubit": UINT, "x": UINT, "y": UINT})),
        "routes": arr(obj({"qubit": UINT, "from": UINT, "to": POS, "straights": UINT,
                           "turns": UINT,
                           "path": arr(obj({"x": UINT, "y": UINT,
                                            "turn": {"type": "boolean"}}))})),
        "movers": arr(obj({"instruction": POS, "qubits": arr(UINT, minItems=1)})),
    }),
    "latency": obj({
        "total_us": NUM,
        "congestion_delay_us": NUM,
        "instructions": arr(obj({"id": POS, "start": NUM, "finish": NUM})),
        "movements": arr(obj({"qubit": UINT,
                              "edge": arr(UINT, minItems=2, maxItems=2),
                              "straights": UINT, "turns": UINT,
                              "delay": NUM, "duration": NUM})),
    }),
}


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "schemas"
    out.mkdir(exist_ok=True)
    for name, schema in SCHEMAS.items():
        doc = {"$schema": "https://json-schema.org/draft/2020-12/schema",
               "title": name, **schema}
        (out / f"{name}.schema.json").write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()
