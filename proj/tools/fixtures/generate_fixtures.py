"""Regenerate the FCIDUMP fixtures shipped under data/fixtures/.

Requires PySCF. Every fixture is RHF/STO-3G with all orbitals active, written
with pyscf.tools.fcidump (Molpro ORBSYM convention). A sidecar <name>.txt
records geometry, point group, and reference energies computed by PySCF.
"""

import argparse
import math
from pathlib import Path

import numpy as np
from pyscf import gto, scf, fci, symm
from pyscf.tools import fcidump

# Equilibrium structures (Angstrom, degrees), experimental values as tabulated
# in the NIST CCCBDB. Coordinates below are rebuilt from bond lengths/angles.
R_H2 = 0.7414
R_LIH = 1.5949
R_HF = 0.9168
R_OH, A_HOH = 0.9578, 104.478
R_BEH = 1.3264
R_NH, A_HNH = 1.0116, 106.67
R_CH4 = 1.0870
R_CC, R_CH, A_HCC = 1.3305, 1.0805, 121.45


def h2o():
    half = math.radians(A_HOH / 2)
    return [("O", (0, 0, 0)),
            ("H", (0, R_OH * math.sin(half), R_OH * math.cos(half))),
            ("H", (0, -R_OH * math.sin(half), R_OH * math.cos(half)))]


def nh3_from_axis_angle(angle_deg):
    """N at origin, C3 axis along z; angle is between -z and each N-H bond."""
    t = math.radians(angle_deg)
    atoms = [("N", (0, 0, 0))]
    for k in range(3):
        phi = 2 * math.pi * k / 3
        atoms.append(("H", (R_NH * math.sin(t) * math.cos(phi),
                            R_NH * math.sin(t) * math.sin(phi),
                            -R_NH * math.cos(t))))
    return atoms


def nh3_equilibrium_axis_angle():
    # HNH angle -> angle between bond and C3 axis
    c = math.cos(math.radians(A_HNH))
    s2 = (1 - c) * 2 / 3
    return math.degrees(math.asin(math.sqrt(s2)))


def ch4():
    d = R_CH4 / math.sqrt(3)
    return [("C", (0, 0, 0)), ("H", (d, d, d)), ("H", (-d, -d, d)),
            ("H", (-d, d, -d)), ("H", (d, -d, -d))]


def c2h4():
    a = math.radians(180 - A_HCC)
    x = R_CC / 2
    return [("C", (0, 0, x)), ("C", (0, 0, -x)),
            ("H", (0, R_CH * math.sin(a), x + R_CH * math.cos(a))),
            ("H", (0, -R_CH * math.sin(a), x + R_CH * math.cos(a))),
            ("H", (0, R_CH * math.sin(a), -x - R_CH * math.cos(a))),
            ("H", (0, -R_CH * math.sin(a), -x - R_CH * math.cos(a)))]


MOLECULES = {
    "h2": ([("H", (0, 0, 0)), ("H", (0, 0, R_H2))], True,
           "H-H 0.7414 A"),
    "h4": ([("H", (0, 0, i * 1.0)) for i in range(4)], True,
           "linear equally spaced chain, H-H 1.0 A"),
    "lih": ([("Li", (0, 0, 0)), ("H", (0, 0, R_LIH))], True,
            "Li-H 1.5949 A"),
    "hf": ([("F", (0, 0, 0)), ("H", (0, 0, R_HF))], True, "F-H 0.9168 A"),
    "h2o": (h2o(), True, "O-H 0.9578 A, H-O-H 104.478 deg"),
    "beh2": ([("Be", (0, 0, 0)), ("H", (0, 0, R_BEH)), ("H", (0, 0, -R_BEH))],
             True, "linear, Be-H 1.3264 A"),
    "nh3": (nh3_from_axis_angle(nh3_equilibrium_axis_angle()), True,
            "N-H 1.0116 A, H-N-H 106.67 deg"),
    "ch4": (ch4(), True, "tetrahedral, C-H 1.0870 A"),
    "c2h4": (c2h4(), True, "planar, C=C 1.3305 A, C-H 1.0805 A, H-C-C 121.45 deg"),
}


def build(atoms, symmetry):
    mol = gto.M(atom=atoms, basis="sto-3g", symmetry=symmetry, unit="Angstrom",
                verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.kernel()
    return mol, mf


# Table-of-record frames that differ from PySCF's standard orientation, given
# as the D2h B1/B2/B3 index each PySCF index maps to.
AXIS_RELABEL = {
    # PySCF puts ethylene in the yz plane with C=C along z; the census table
    # of record uses C=C along y with the molecule in the xy plane.
    "c2h4": {"1": "2", "2": "3", "3": "1"},
}


def relabel_d2h(orbsym, digit_map):
    out = []
    for lab in orbsym:
        name = D2H_MOLPRO[lab - 1]
        if name.startswith("B"):
            name = "B" + digit_map[name[1]] + name[2]
        out.append(D2H_MOLPRO.index(name) + 1)
    return out


def rewrite_orbsym(path, orbsym):
    text = Path(path).read_text()
    head, sep, body = text.partition("ISYM")
    start = head.upper().index("ORBSYM=")
    head = head[:start] + "ORBSYM=" + ",".join(map(str, orbsym)) + "\n  "
    Path(path).write_text(head + sep + body)


def write(out, name, atoms, symmetry, note, run_fci):
    mol, mf = build(atoms, symmetry)
    path = out / f"{name}.fcidump"
    fcidump.from_scf(mf, str(path), tol=1e-14, molpro_orbsym=True)
    relabel = AXIS_RELABEL.get(name)
    if relabel:
        rewrite_orbsym(path, relabel_d2h(read_orbsym(path), relabel))
    lines = [f"molecule: {name}",
             f"geometry: {note}",
             "geometry source: experimental equilibrium structure (NIST CCCBDB); "
             "coordinates rebuilt from bond lengths/angles, so absolute energies are approximate",
             "generator: tools/fixtures/generate_fixtures.py (PySCF "
             f"{__import__('pyscf').__version__}, RHF/STO-3G, all orbitals active)",
             f"point group: {mol.topgroup} (ORBSYM uses abelian subgroup "
             f"{symm.std_symb(mol.groupname) if mol.groupname not in ('Dooh', 'Coov') else {'Dooh': 'D2h', 'Coov': 'C2v'}[mol.groupname]})",
             "atoms (Angstrom):"]
    for sym, xyz in atoms:
        lines.append(f"  {sym} {xyz[0]: .8f} {xyz[1]: .8f} {xyz[2]: .8f}")
    if relabel:
        lines.append("ORBSYM axis relabeling applied (B1,B2,B3 index map "
                     f"{relabel}) to match the reference census frame")
    lines.append(f"e_hf: {mf.e_tot:.10f}")
    if run_fci:
        e = fci.FCI(mf).kernel()[0]
        lines.append(f"e_fci: {e:.10f}")
    (out / f"{name}.txt").write_text("\n".join(lines) + "\n")
    return mol, mf


# Molpro D2h ordering of irreps, as (C2z, C2y, C2x, i) characters.
D2H_MOLPRO = ["Ag", "B3u", "B2u", "B1g", "B1u", "B2g", "B3g", "Au"]

# Character of each D2h irrep (Molpro bit label) under the generators.
# Bit 0 flips sign under C2(z)? Derive from explicit character table.
D2H_TABLE = {  # E C2z C2y C2x i sxy sxz syz
    "Ag":  [1, 1, 1, 1, 1, 1, 1, 1],
    "B1g": [1, 1, -1, -1, 1, 1, -1, -1],
    "B2g": [1, -1, 1, -1, 1, -1, 1, -1],
    "B3g": [1, -1, -1, 1, 1, -1, -1, 1],
    "Au":  [1, 1, 1, 1, -1, -1, -1, -1],
    "B1u": [1, 1, -1, -1, -1, -1, 1, 1],
    "B2u": [1, -1, 1, -1, -1, 1, -1, 1],
    "B3u": [1, -1, -1, 1, -1, 1, 1, -1],
}
OPS = ["E", "C2z", "C2y", "C2x", "i", "sxy", "sxz", "syz"]

# Subgroups of D2h (operation subsets), keyed by a file tag.
SUBGROUPS = {
    "d2h": ["E", "C2z", "C2y", "C2x", "i", "sxy", "sxz", "syz"],
    "d2": ["E", "C2z", "C2y", "C2x"],
    "c2h": ["E", "C2z", "i", "sxy"],
    "c2v": ["E", "C2z", "sxz", "syz"],
    "c2h-x": ["E", "C2x", "i", "syz"],
    "c2v-x": ["E", "C2x", "sxy", "sxz"],
    "c2": ["E", "C2z"],
    "c2-x": ["E", "C2x"],
    "cs": ["E", "sxy"],
    "cs-xz": ["E", "sxz"],
    "ci": ["E", "i"],
    "c1": ["E"],
}


def subgroup_labels(d2h_orbsym, ops):
    """Restrict D2h irreps to a subgroup; number the distinct restricted
    characters 1..h in order of first appearance over the full D2h list."""
    idx = [OPS.index(o) for o in ops]
    classes = []
    for name in D2H_MOLPRO:
        chars = tuple(D2H_TABLE[name][k] for k in idx)
        if chars not in classes:
            classes.append(chars)
    # the totally symmetric class is always first (Ag)
    label_of = {}
    for bits, name in enumerate(D2H_MOLPRO):
        chars = tuple(D2H_TABLE[name][k] for k in idx)
        label_of[bits] = classes.index(chars)
    for a in range(8):
        for b in range(8):
            assert label_of[a ^ b] == label_of[a] ^ label_of[b], "non-linear labeling"
    out = []
    for lab in d2h_orbsym:
        chars = tuple(D2H_TABLE[D2H_MOLPRO[lab - 1]][k] for k in idx)
        out.append(classes.index(chars) + 1)
    return out


def read_orbsym(path):
    text = Path(path).read_text()
    head = text.split("&END")[0] if "&END" in text else text.split("/")[0]
    part = head.upper().split("ORBSYM=")[1].split("ISYM")[0]
    return [int(v) for v in part.replace(",", " ").split()]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[2] / "data" / "fixtures"))
    ap.add_argument("--no-fci", action="store_true")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, (atoms, symmetry, note) in MOLECULES.items():
        write(out, name, atoms, symmetry, note, not args.no_fci and name != "c2h4")

    d2h = read_orbsym(out / "beh2.fcidump")
    for tag, ops in SUBGROUPS.items():
        labels = subgroup_labels(d2h, ops)
        (out / f"beh2.{tag}.orbsym").write_text(" ".join(map(str, labels)) + "\n")

    flip = out / "nh3_flip"
    flip.mkdir(exist_ok=True)
    for angle in (68, 72, 76, 80, 84, 88, 90):
        atoms = nh3_from_axis_angle(angle)
        # Keep one mirror plane (Cs) along the whole path.
        write(flip, f"nh3_{angle:03d}", atoms, "Cs",
              f"N-H 1.0116 A, angle(-z, N, H) = {angle} deg", not args.no_fci)


if __name__ == "__main__":
    main()
