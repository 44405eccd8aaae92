#!/usr/bin/env python3
"""Writes data/er_fixture.cfg: a measurement fixture whose probes reproduce the
published per-generation exposure ratios.

Only the ratios are published, so each probe's power density is obtained by
inverting them against the configured reference level:

    E = ER * E_ref(band containing f),   S = E^2 / 376.73

The standards block is copied verbatim from data/standards.cfg.
"""

import pathlib
import re

ETA0 = 376.73
ROOT = pathlib.Path(__file__).resolve().parent.parent

# generation -> representative uplink carrier (Hz)
CARRIERS = {
    "1G": 850e6,   # AMPS
    "2G": 900e6,   # GSM 900
    "3G": 1950e6,  # UMTS band 1 uplink
    "4G": 2535e6,  # LTE band 7 uplink
    "5G": 3500e6,  # NR n78
}

# (standard, generation) -> (AM, TR) exposure ratio
RATIOS = {
    ("ICNIRP", "1G"): (0.2403, 0.211),
    ("ICNIRP", "2G"): (0.361, 0.3432),
    ("ICNIRP", "3G"): (0.41, 0.3719),
    ("ICNIRP", "4G"): (0.481, 0.4458),
    ("ICNIRP", "5G"): (0.83, 0.6075),
    ("IEEE C95", "1G"): (0.1848, 0.1622),
    ("IEEE C95", "2G"): (0.277, 0.264),
    ("IEEE C95", "3G"): (0.31, 0.286),
    ("IEEE C95", "4G"): (0.369, 0.3429),
    ("IEEE C95", "5G"): (0.6379, 0.4673),
}


def parse_standards(text):
    standards, current = {}, None
    for line in text.splitlines():
        line = line.strip()
        m = re.match(r"\[standards\.(.+)\]", line)
        if m:
            current = {"name": m.group(1), "bands": []}
            standards[m.group(1)] = current
        elif current is not None and line.startswith("name"):
            current["name"] = line.split("=", 1)[1].strip()
        elif current is not None and line.startswith("band"):
            lo, hi, ref = line.split("=", 1)[1].split("|")[0].split()
            current["bands"].append((float(lo), float(hi), float(ref)))
    return {s["name"]: s["bands"] for s in standards.values()}


def e_ref(bands, f):
    for lo, hi, ref in bands:
        if lo <= f < hi:
            return ref
    raise ValueError(f"no band for {f}")


def main():
    standards_text = (ROOT / "data" / "standards.cfg").read_text()
    standards = parse_standards(standards_text)
    out = [
        "# Exposure measurement fixture: one probe per (generation, mode, standard).",
        "# Generated by tools/derive_er_fixture.py; do not edit by hand.",
        "# power_density_w_m2 = (ER * E_ref)^2 / 376.73 with E_ref from the band",
        "# containing freq_hz; ER is the published ratio named in each note.",
        "",
        standards_text.strip(),
        "",
    ]
    for (std, gen), (am, tr) in RATIOS.items():
        f = CARRIERS[gen]
        ref = e_ref(standards[std], f)
        for mode, er in (("am", am), ("tr", tr)):
            e = er * ref
            s = e * e / ETA0
            pid = f"{std.lower().replace(' ', '_')}_{gen.lower()}_{mode}"
            out += [
                f"[probe.{pid}]",
                f"generation = {gen}",
                f"mode = {mode}",
                f"standard = {std}",
                f"freq_hz = {f:.17g}",
                f"power_density_w_m2 = {s:.17g}",
                f"note = inverted from ER {er} x E_ref {ref} V/m",
                "",
            ]
    (ROOT / "data" / "er_fixture.cfg").write_text("\n".join(out))


if __name__ == "__main__":
    main()
