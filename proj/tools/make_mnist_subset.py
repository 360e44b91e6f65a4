#!/usr/bin/env python3
# Copyright 2026 The qboost Authors
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

"""Builds the bundled MNIST {0,1,2,3} subset as IDX files.

Source: the `mnist` npm package (MIT), whose src/digits/<d>.json files hold
flattened 28x28 MNIST digits scaled to [0,1] with three decimals.

    npm pack mnist && tar xzf mnist-*.tgz
    python3 tools/make_mnist_subset.py package/src/digits data/mnist 600
"""
import json
import struct
import sys
from pathlib import Path


def main():
    src, dst, per_class = Path(sys.argv[1]), Path(sys.argv[2]), int(sys.argv[3])
    classes = [0, 1, 2, 3]
    digits = {}
    for d in classes:
        raw = json.loads((src / f"{d}.json").read_text())["data"]
        count = len(raw) // 784
        if count < per_class:
            sys.exit(f"digit {d}: only {count} images")
        digits[d] = [raw[i * 784:(i + 1) * 784] for i in range(per_class)]

    images, labels = bytearray(), bytearray()
    for i in range(per_class):
        for d in classes:
            images.extend(min(255, max(0, round(v * 255))) for v in digits[d][i])
            labels.append(d)
    n = per_class * len(classes)
    dst.mkdir(parents=True, exist_ok=True)
    (dst / "mnist0123-images-idx3-ubyte").write_bytes(
        struct.pack(">IIII", 0x803, n, 28, 28) + images)
    (dst / "mnist0123-labels-idx1-ubyte").write_bytes(
        struct.pack(">II", 0x801, n) + labels)


if __name__ == "__main__":
    main()
