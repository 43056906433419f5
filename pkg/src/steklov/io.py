"""CSV and JSON serialization with lossless float formatting."""

from __future__ import annotations

import csv
import io as _io
import json
from pathlib import Path

from .dn_map import SpectrumEntry, SteklovSpectrum
from .inverse import TraceDetSignature

SPECTRUM_HEADER = ["value", "branch", "m", "multiplicity"]
SIGNATURE_HEADER = ["m", "trace", "det"]


def format_float(value: float) -> str:
    """17 significant digits: enough to round-trip any double exactly."""
    return f"{value:.17g}"


def spectrum_rows(spectrum: SteklovSpectrum):
    entries = sorted(spectrum.entries, key=lambda e: (e.m_index, e.branch == "+"))
    for e in entries:
        yield [format_float(e.value), e.branch, str(e.m_index), str(e.multiplicity)]


def write_spectrum_csv(spectrum: SteklovSpectrum, path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(SPECTRUM_HEADER)
        writer.writerows(spectrum_rows(spectrum))


def spectrum_csv_text(spectrum: SteklovSpectrum) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(SPECTRUM_HEADER)
    writer.writerows(spectrum_rows(spectrum))
    return buf.getvalue()


def read_spectrum_csv(path, n=None, frequency=None) -> SteklovSpectrum:
    """Rebuild a spectrum from CSV; provenance metadata is optional."""
    entries = []
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if header != SPECTRUM_HEADER:
            raise ValueError(f"unexpected spectrum header: {header}")
        for row in reader:
            value, branch, m, mult = row
            entries.append(SpectrumEntry(float(value), branch, int(m), int(mult)))
    m_max = max((e.m_index for e in entries), default=-1)
    return SteklovSpectrum(
        entries=tuple(entries),
        n=n if n is not None else 0,
        frequency=frequency if frequency is not None else 0.0,
        m_max=m_max,
        crossover_index=0,
    )


def write_signature_csv(signature: TraceDetSignature, path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(SIGNATURE_HEADER)
        for m, tr, det in zip(signature.m_indices, signature.traces, signature.dets):
            writer.writerow([str(int(m)), format_float(tr), format_float(det)])


def dump_report(report: dict, path=None) -> str:
    text = json.dumps(report, indent=2, sort_keys=True)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
