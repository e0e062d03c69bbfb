#!/usr/bin/env python3
"""Writes crypto_vectors.txt using Python's hashlib only.

This is deliberately separate from the C++ code so the frozen file acts as an
independent oracle for the key-derivation and cipher routines.
"""
import hashlib
import pathlib
import struct

DOMAIN_TAG = b"uhsn/kdf/v1"


def serialize(q, rows, cols, entries):
    if q == 2:
        out = bytearray((rows * cols + 7) // 8)
        for i, e in enumerate(entries):
            if e:
                out[i // 8] |= 0x80 >> (i % 8)
        return bytes(out)
    width = ((q - 1).bit_length() + 7) // 8
    return b"".join(e.to_bytes(width, "big") for e in entries)


def kdf(q, rows, cols, epoch, entries):
    h = hashlib.sha256()
    h.update(DOMAIN_TAG)
    h.update(struct.pack(">IIIQ", q, rows, cols, epoch))
    h.update(serialize(q, rows, cols, entries))
    return h.digest()


def encrypt(key, nonce, plaintext, auth):
    body = bytearray()
    for block in range((len(plaintext) + 31) // 32):
        ks = hashlib.sha256(key + nonce + struct.pack(">I", block)).digest()
        chunk = plaintext[block * 32:(block + 1) * 32]
        body.extend(a ^ b for a, b in zip(chunk, ks))
    body = bytes(body)
    tag = hashlib.sha256(key + b"\x01" + nonce + body).digest()[:16] if auth else bytes(16)
    return body, tag


KDF_CASES = [
    (5, 1, 1, 1, [3]),
    (5, 1, 1, 0, [0]),
    (5, 2, 2, 0, [0, 0, 0, 0]),
    (251, 2, 2, 0, [1, 0, 0, 1]),
    (2, 1, 8, 2, [1] * 8),
    (2, 2, 3, 5, [1, 0, 1, 1, 1, 0]),
    (257, 3, 2, 7, [256, 0, 1, 128, 255, 17]),
]

HELLO = b"hello, ward 7"
CIPHER_CASES = [
    (True, bytes(12), b""),
    (True, bytes([0, 10] + [0] * 9 + [1]), HELLO),
    (True, bytes(range(1, 13)), bytes(range(100))),
    (False, bytes([0, 10] + [0] * 9 + [2]), HELLO),
]


def main():
    lines = ["# uhsn key-derivation and cipher vectors (hash: SHA256)"]
    for q, rows, cols, epoch, entries in KDF_CASES:
        lines.append(
            f"kdf q={q} rows={rows} cols={cols} epoch={epoch} "
            f"matrix={serialize(q, rows, cols, entries).hex()} key={kdf(q, rows, cols, epoch, entries).hex()}"
        )
    key = kdf(5, 1, 1, 1, [3])
    for auth, nonce, pt in CIPHER_CASES:
        body, tag = encrypt(key, nonce, pt, auth)
        lines.append(
            f"cipher auth={int(auth)} key={key.hex()} nonce={nonce.hex()} "
            f"plaintext={pt.hex()} body={body.hex()} tag={tag.hex()}"
        )
    path = pathlib.Path(__file__).with_name("crypto_vectors.txt")
    path.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
