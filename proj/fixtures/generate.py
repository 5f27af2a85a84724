#!/usr/bin/env python3
# Copyright 2026 The sciarray Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the golden .ablob fixtures and manifest.json.

The bytes are packed here with struct, independently of the C++ encoder, so
the golden test catches any drift in the header layout.
"""

import json
import math
import os
import struct

ELEM = {
    "i8": (1, "b"), "i16": (2, "h"), "i32": (3, "i"), "i64": (4, "q"),
    "f32": (5, "f"), "f64": (6, "d"), "c64": (7, "ff"), "c128": (8, "dd"),
}


def header(storage, elem, dims):
    code = ELEM[elem][0]
    count = math.prod(dims)
    if storage == "short":
        padded = list(dims) + [0] * (6 - len(dims))
        return struct.pack("<BBBBI6HI", 0, code, len(dims), 0, count, *padded, 0)
    return struct.pack("<BBHIQ", 1, code, 0, len(dims), count) + struct.pack(
        "<%dI" % len(dims), *dims)


def payload(elem, values):
    fmt = ELEM[elem][1]
    out = b""
    for v in values:
        if len(fmt) == 2:
            out += struct.pack("<" + fmt, v[0], v[1])
        else:
            out += struct.pack("<" + fmt, v)
    return out


CASES = [
    ("short_f64_vector5", "short", "f64", [5], [1.0, 2.0, 3.0, 4.0, 5.0]),
    ("short_f64_matrix2x2", "short", "f64", [2, 2], [0.1, 0.2, 0.3, 0.4]),
    ("short_i32_matrix2x2", "short", "i32", [2, 2], [1, 2, 3, 4]),
    ("short_i8_empty", "short", "i8", [0], []),
    ("short_i16_cube", "short", "i16", [2, 3, 2], list(range(-6, 6))),
    ("short_i64_vector3", "short", "i64", [3], [-(2**63), 0, 2**63 - 1]),
    ("short_c64_vector2", "short", "c64", [2], [(1.5, -2.0), (0.0, 0.25)]),
    ("max_f32_rank7", "max", "f32", [2] * 7, [i * 0.5 for i in range(128)]),
    ("max_c128_3x2", "max", "c128", [3, 2],
     [(float(i), -float(i) / 4) for i in range(6)]),
    ("max_i16_vector3", "max", "i16", [3], [7, -8, 9]),
]


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    manifest = []
    for name, storage, elem, dims, values in CASES:
        head = header(storage, elem, dims)
        blob = head + payload(elem, values)
        with open(os.path.join(here, name + ".ablob"), "wb") as f:
            f.write(blob)
        manifest.append({
            "file": name + ".ablob",
            "storage": storage,
            "elem": elem,
            "elem_code": ELEM[elem][0],
            "rank": len(dims),
            "dims": dims,
            "total_count": math.prod(dims),
            "header_bytes": len(head),
            "blob_bytes": len(blob),
            "values": [list(v) if isinstance(v, tuple) else v for v in values],
        })
    with open(os.path.join(here, "manifest.json"), "w") as f:
        json.dump({"fixtures": manifest}, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
