#!/usr/bin/env python3
# Copyright 2026 The GoodVibes Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Generates ping_vectors.txt with Python's hmac module.

Independent of the C++ implementation; rerun only if the wire encoding
changes, and commit the output.
"""

import hashlib
import hmac
import struct


def field(b: bytes) -> bytes:
    return struct.pack(">I", len(b)) + b


def encode(sender: bytes, counter: int, nonce: bytes, sent_at: int) -> bytes:
    return (field(sender) + field(struct.pack(">Q", counter)) + field(nonce) +
            field(struct.pack(">q", sent_at)))


VECTORS = [
    (bytes(range(32)), bytes.fromhex("0102030405060708"), 1,
     bytes(range(0xa0, 0xb0)), 1000),
    (bytes([0xff] * 32), bytes.fromhex("deadbeefcafef00d"), 0xfedcba9876543210,
     bytes([0x00] * 16), 2100000),
    (bytes.fromhex("8f" * 16 + "31" * 16), bytes.fromhex("0000000000000001"), 42,
     bytes.fromhex("00112233445566778899aabbccddeeff"), 0),
]


def main() -> None:
    print("# key sender counter nonce sent_at encoding tag (all hex except counter and sent_at)")
    for key, sender, counter, nonce, sent_at in VECTORS:
        enc = encode(sender, counter, nonce, sent_at)
        tag = hmac.new(key, enc, hashlib.sha256).hexdigest()
        print(key.hex(), sender.hex(), counter, nonce.hex(), sent_at, enc.hex(), tag)


if __name__ == "__main__":
    main()
