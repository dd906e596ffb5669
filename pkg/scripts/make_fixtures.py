#!/usr/bin/env python3
"""Regenerate the synthetic two-qubit PTM fixtures under fixtures/.

All fixtures are synthetic: deterministic closed-form channels, not
measured data.  Each file's label says so.
"""
import argparse
import json
import math
import pathlib

import numpy as np

from smallqec import channel, ingest
from smallqec.pauli import from_string


def zz_heavy_channel() -> channel.PauliChannel:
    probs = np.zeros(16)
    probs[from_string("II").index] = 0.92
    probs[from_string("ZI").index] = 0.02
    probs[from_string("IZ").index] = 0.02
    probs[from_string("ZZ").index] = 0.04
    return channel.PauliChannel(2, probs)


def dephasing_channel(tau_ms: float, t2_ms: float = 2000.0, tc_ms: float = 6000.0):
    """Independent Z flips plus a correlated ZZ flip, both growing with tau."""
    a = 0.5 * (1.0 - math.exp(-tau_ms / t2_ms))
    c = 0.5 * (1.0 - math.exp(-tau_ms / tc_ms))
    single = channel.PauliChannel(1, np.array([1.0 - a, 0.0, a, 0.0]))
    zz = np.zeros(16)
    zz[from_string("II").index] = 1.0 - c
    zz[from_string("ZZ").index] = c
    return channel.compose(channel.iid(single, 2), channel.PauliChannel(2, zz))


def write(path: pathlib.Path, est: ingest.ChannelEstimate) -> None:
    ingest.save_estimate(est, str(path))
    print(f"wrote {path} (label={est.label}, tau_ms={est.tau_ms})")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out-dir",
        default=str(pathlib.Path(__file__).parent.parent / "fixtures"),
    )
    args = parser.parse_args()
    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    ident = ingest.ptm_of_pauli_channel(
        channel.identity_channel(2), tau_ms=0.0, label="synthetic-identity"
    )
    write(out / "ptm_identity.json", ident)

    zz = ingest.ptm_of_pauli_channel(
        zz_heavy_channel(), tau_ms=40.0, label="synthetic-zz-heavy"
    )
    write(out / "ptm_zz_heavy.json", zz)

    # Same diagonal as the ZZ-heavy fixture, plus off-diagonal contamination
    # that an ideal Pauli channel would not have.  Twirling must ignore it.
    noisy = np.array(zz.ptm)
    noisy[1, 2] += 0.013
    noisy[3, 12] -= 0.021
    noisy[7, 4] += 0.008
    noisy[14, 9] -= 0.005
    offdiag = ingest.ChannelEstimate(
        ptm=noisy, tau_ms=40.0, label="synthetic-offdiag"
    )
    write(out / "ptm_offdiag.json", offdiag)

    for tau in (10.0, 40.0, 120.0):
        est = ingest.ptm_of_pauli_channel(
            dephasing_channel(tau),
            tau_ms=tau,
            label=f"synthetic-dephasing-tau{int(tau):03d}",
        )
        write(out / f"ptm_dephasing_tau{int(tau):03d}.json", est)

    # Legal entries but an unphysical diagonal: the twirl has unit negative
    # mass, far past any clip bound, so ingest must reject it.
    bad_diag = np.ones(16)
    bad_diag[5] = -1.0
    bad = ingest.ChannelEstimate(
        ptm=np.diag(bad_diag), tau_ms=40.0, label="synthetic-bad-negative"
    )
    write(out / "ptm_bad_negative.json", bad)

    direct = channel.channel_to_dict(zz_heavy_channel())
    direct["tau_ms"] = 40.0
    direct["label"] = "synthetic-zz-heavy-direct"
    path = out / "channel_zz_heavy.json"
    with open(path, "w", encoding="utf-8") as f:
        json.dump(direct, f, indent=2)
        f.write("\n")
    print(f"wrote {path} (label={direct['label']}, tau_ms={direct['tau_ms']})")


if __name__ == "__main__":
    main()
