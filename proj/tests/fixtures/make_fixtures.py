#!/usr/bin/env python3
#
# Project retroplan - Copyright 2026 The retroplan Authors.
# SPDX-License-Identifier: Apache-2.0
#
"""Regenerates the committed test fixtures with RDKit.

Outputs (next to this script):
  reactions.jsonl        mapped single-step reactions with recorded reactants
  bench_reactions.jsonl  mapped reactions of the planning benchmark routes
  bench_targets.txt      benchmark targets, "SMILES id"
  bench_stock.txt        benchmark stock
  bench_routes.jsonl     ground-truth benchmark routes {id, route}
  patent_corpus.jsonl    unmapped reactions grouped by patent
  patent_expected.json   expected route-builder counts
  filter_suite.jsonl     crafted filter cases with expected failing rules
  molecules.jsonl        molecules with reference weights and random spellings
  matching.jsonl         small molecule x pattern pairs with every embedding
"""

import json
import os
import random

from rdkit import Chem, RDLogger
from rdkit.Chem import AllChem, Descriptors

RDLogger.DisableLog("rdApp.*")
HERE = os.path.dirname(os.path.abspath(__file__))
RNG = random.Random(20261019)

PRIMARY_AMINE = "[NX3;H2;!$(NC=O);!$(NS=O);!$(N-a):{m}]"
SEC_OR_PRIMARY_AMINE = "[NX3;H2,H1;!$(NC=O);!$(NS=O);!$(N-a);!$(N-[#6]=[#8]):{m}]"

CHEMISTRY = {
    "amide": "[C:1](=[O:2])[OH1].{a}>>[C:1](=[O:2])[N:3]".format(
        a=SEC_OR_PRIMARY_AMINE.format(m=3)),
    "ester": "[C:1](=[O:2])[OH1].[OH1:4][CX4:3]>>[C:1](=[O:2])[O:4][C:3]",
    "suzuki": "[c:1][Br].[c:2]B(O)O>>[c:1][c:2]",
    "buchwald": "[c:1][Br].{a}>>[c:1][N:2]".format(a=SEC_OR_PRIMARY_AMINE.format(m=2)),
    "williamson": "[CH2:1][Br].[OH1:2][c:3]>>[CH2:1][O:2][c:3]",
    "sulfonamide": "[S:1](=[O:2])(=[O:3])Cl.{a}>>[S:1](=[O:2])(=[O:3])[N:4]".format(
        a=SEC_OR_PRIMARY_AMINE.format(m=4)),
    "acyl_chloride": "[C:1](=[O:2])Cl.{a}>>[C:1](=[O:2])[N:3]".format(
        a=SEC_OR_PRIMARY_AMINE.format(m=3)),
    "reductive_amination": "[CH1:1](=O)[#6:3].{a}>>[CH2:1]([#6:3])[NH1:2]".format(
        a=PRIMARY_AMINE.format(m=2)),
    "urea": "[N:1]=[C:2]=[O:3].[NX3;H2;!$(NC=O):4]>>[NH1:1][C:2](=[O:3])[NH1:4]",
    "ester_hydrolysis": "[C:1](=[O:2])[O:3][CH3]>>[C:1](=[O:2])[OH1:3]",
    "nitro_reduction": "[c:1][N+:2](=O)[O-]>>[c:1][NH2;+0:2]",
    "boc_deprotection": "[N:1]C(=O)OC(C)(C)C>>[N:1]",
    "sonogashira": "[c:1][I].[CH1:2]#[C:3]>>[c:1][C:2]#[C:3]",
    "ketone_reduction": "[C:1](=[O:2])([#6:3])[#6:4]>>[CH1:1]([OH1:2])([#6:3])[#6:4]",
    "demethylation": "[c:1][O:2][CH3]>>[c:1][OH1:2]",
    "n_alkylation": "[CH2:1][Br].{a}>>[CH2:1][N:2]".format(
        a=SEC_OR_PRIMARY_AMINE.format(m=2)),
    "anilide": "[C:1](=[O:2])[OH1].[NH2:3][c:4]>>[C:1](=[O:2])[NH1:3][c:4]",
    "aryl_sulfonamide": "[S:1](=[O:2])(=[O:3])Cl.[NH2:4][c:5]>>[S:1](=[O:2])(=[O:3])[NH1:4][c:5]",
}

BLOCKS = {
    "acid": ["OC(=O)c1ccccc1", "OC(=O)c1ccc(Cl)cc1", "OC(=O)c1cccc(OC)c1",
             "OC(=O)Cc1ccccc1", "OC(=O)C1CCCCC1", "OC(=O)c1ccncc1", "OC(=O)c1ccc(F)cc1",
             "OC(=O)c1ccco1"],
    "amine": ["NCc1ccccc1", "C1COCCN1", "C1CCNCC1", "NC1CC1", "CNCc1ccccc1",
              "NCCc1ccccc1", "NCc1ccc(OC)cc1", "NC1CCCCC1"],
    "aryl_bromide": ["Brc1ccccc1", "Brc1ccc(C)cc1", "Brc1ccc(OC)cc1", "Brc1cccnc1",
                     "Brc1ccc(C#N)cc1", "Brc1cccs1"],
    "boronic": ["OB(O)c1ccccc1", "OB(O)c1ccc(C)cc1", "OB(O)c1ccc(F)cc1", "OB(O)c1cccnc1"],
    "alcohol": ["OCc1ccccc1", "OC1CCCCC1", "OCCc1ccccc1", "OCC1CCCC1"],
    "alkyl_bromide": ["BrCc1ccccc1", "BrCCCC", "BrCc1ccc(F)cc1", "BrCC1CC1"],
    "phenol": ["Oc1ccccc1", "Oc1ccc(OC)cc1", "Oc1ccc(Cl)cc1", "Oc1cccc(C)c1"],
    "sulfonyl_chloride": ["O=S(=O)(Cl)c1ccccc1", "Cc1ccc(S(=O)(=O)Cl)cc1",
                          "CS(=O)(=O)Cl"],
    "acyl_chloride": ["O=C(Cl)c1ccccc1", "CC(=O)Cl", "O=C(Cl)c1ccc(C)cc1"],
    "aldehyde": ["O=Cc1ccccc1", "COc1ccc(C=O)cc1", "O=CC1CCCCC1", "O=Cc1ccncc1"],
    "isocyanate": ["O=C=Nc1ccccc1", "O=C=Nc1ccc(Cl)cc1", "O=C=NC1CCCCC1"],
    "methyl_ester": ["COC(=O)c1ccccc1", "COC(=O)c1ccc(Br)cc1", "COC(=O)Cc1ccccc1",
                     "COC(=O)c1ccc(C)cc1", "COC(=O)C1CCCCC1", "COC(=O)c1ccc(F)cc1"],
    "nitroarene": ["O=[N+]([O-])c1ccccc1", "Cc1ccc([N+](=O)[O-])cc1",
                   "COc1ccc([N+](=O)[O-])cc1", "O=[N+]([O-])c1ccc(Cl)cc1",
                   "O=[N+]([O-])c1cccnc1", "O=[N+]([O-])c1ccc(F)cc1"],
    "boc_amine": ["CC(C)(C)OC(=O)NCc1ccccc1", "CC(C)(C)OC(=O)N1CCN(Cc2ccccc2)CC1",
                  "CC(C)(C)OC(=O)NC1CCCCC1"],
    "aryl_iodide": ["Ic1ccccc1", "COc1ccc(I)cc1", "Ic1ccc(C)cc1"],
    "alkyne": ["C#Cc1ccccc1", "C#CCCCC", "C#CC1CC1"],
    "ketone": ["CC(=O)c1ccccc1", "COc1ccc(C(C)=O)cc1", "CCC(=O)c1ccccc1",
               "O=C(c1ccccc1)c1ccccc1"],
    "aryl_methyl_ether": ["COc1ccc(Cl)cc1", "COc1ccc(C)cc1", "COc1ccccc1C#N"],
}

PAIRS = {
    "amide": ("acid", "amine"),
    "ester": ("acid", "alcohol"),
    "suzuki": ("aryl_bromide", "boronic"),
    "buchwald": ("aryl_bromide", "amine"),
    "williamson": ("alkyl_bromide", "phenol"),
    "sulfonamide": ("sulfonyl_chloride", "amine"),
    "acyl_chloride": ("acyl_chloride", "amine"),
    "reductive_amination": ("aldehyde", "amine"),
    "urea": ("isocyanate", "amine"),
    "ester_hydrolysis": ("methyl_ester",),
    "nitro_reduction": ("nitroarene",),
    "boc_deprotection": ("boc_amine",),
    "sonogashira": ("aryl_iodide", "alkyne"),
    "ketone_reduction": ("ketone",),
    "demethylation": ("aryl_methyl_ether",),
    "n_alkylation": ("alkyl_bromide", "amine"),
}


def canon(smi):
    return Chem.MolToSmiles(Chem.MolFromSmiles(smi))


def run_forward(name, reactants):
    """Returns (mapped reaction SMILES, product SMILES) for a unique outcome, else None."""
    rxn = AllChem.ReactionFromSmarts(CHEMISTRY[name])
    mols = [Chem.MolFromSmiles(s) for s in reactants]
    outcomes = {}
    for prods in rxn.RunReactants(mols):
        p = prods[0]
        try:
            Chem.SanitizeMol(p)
        except Exception:
            continue
        outcomes.setdefault(Chem.MolToSmiles(p), p)
    if len(outcomes) != 1:
        return None
    product = next(iter(outcomes.values()))

    # Product atoms get maps 1..n in a shuffled order; reactant atoms inherit
    # them through the reaction bookkeeping.
    order = list(range(1, product.GetNumAtoms() + 1))
    RNG.shuffle(order)
    source = {}
    for atom, m in zip(product.GetAtoms(), order):
        atom.SetAtomMapNum(m)
        source[(atom.GetIntProp("react_idx"), atom.GetIntProp("react_atom_idx"))] = m
    mapped = []
    for ri, mol in enumerate(mols):
        mol = Chem.Mol(mol)
        for atom in mol.GetAtoms():
            atom.SetAtomMapNum(source.get((ri, atom.GetIdx()), 0))
        mapped.append(Chem.MolToSmiles(mol))
    plain = Chem.Mol(product)
    for atom in plain.GetAtoms():
        atom.SetAtomMapNum(0)
    return ".".join(mapped) + ">>" + Chem.MolToSmiles(product), Chem.MolToSmiles(plain)


def single_step_reactions():
    records = []
    for name, roles in PAIRS.items():
        combos = [[b] for b in BLOCKS[roles[0]]]
        if len(roles) == 2:
            combos = [[a, b] for a in BLOCKS[roles[0]] for b in BLOCKS[roles[1]]]
        RNG.shuffle(combos)
        kept = 0
        for combo in combos:
            out = run_forward(name, combo)
            if out is None:
                continue
            rxn_smiles, product = out
            records.append({
                "id": "rxn-%03d" % (len(records) + 1),
                "chemistry": name,
                "rxn_smiles": rxn_smiles,
                "reactants": sorted(canon(s) for s in combo),
                "product": product,
            })
            kept += 1
            if kept == 4:
                break
    return records


# ---------------------------------------------------------------------------
# Planning benchmark


def route_node(smiles, children=None, template=None):
    node = {"smiles": canon(smiles), "in_stock": not children, "children": []}
    if children:
        node["children"].append({"template": template or "", "nodes": children})
    return node


def bench_routes():
    """Targets whose only stock-terminated route is the constructed one."""
    routes, reactions, stock = [], [], set()

    def step(name, reactants, rid):
        out = run_forward(name, reactants)
        assert out is not None, (name, reactants)
        reactions.append({"id": rid, "patent_id": "bench", "rxn_smiles": out[0]})
        return out[1]

    acids = ["OC(=O)c1ccccc1", "OC(=O)c1ccc(Cl)cc1", "OC(=O)C1CCCCC1",
             "OC(=O)c1ccncc1", "OC(=O)Cc1ccccc1"]
    nitro = ["O=[N+]([O-])c1ccccc1", "Cc1ccc([N+](=O)[O-])cc1",
             "COc1ccc([N+](=O)[O-])cc1", "O=[N+]([O-])c1ccc(F)cc1",
             "O=[N+]([O-])c1ccc(Cl)cc1"]
    sulfonyl = ["O=S(=O)(Cl)c1ccccc1", "Cc1ccc(S(=O)(=O)Cl)cc1", "CS(=O)(=O)Cl"]
    isocyan = ["O=C=NC1CCCCC1", "O=C=NCc1ccccc1", "O=C=NCCCC"]
    esters = ["COC(=O)c1ccc(C)cc1", "COC(=O)c1ccc(F)cc1", "COC(=O)C1CCCC1",
              "COC(=O)c1ccc(OC)cc1", "COC(=O)c1ccco1", "COC(=O)c1cccs1",
              "COC(=O)c1cccnc1", "COC(=O)Cc1ccc(Cl)cc1", "COC(=O)c1ccc(C#N)cc1",
              "COC(=O)C1CCOCC1"]
    amines = ["C1COCCN1", "C1CCNCC1", "NC1CC1", "CNCc1ccccc1", "NC1CCCCC1"]

    k = 0

    def nid():
        nonlocal k
        k += 1
        return k

    # nitro reduction, then acylation of the new aniline (2 steps)
    for i in range(4):
        t = nid()
        an = step("nitro_reduction", [nitro[i]], "b%02d-1" % t)
        tgt = step("anilide", [acids[i], an], "b%02d-2" % t)
        stock.update([nitro[i], acids[i]])
        routes.append((t, tgt, route_node(tgt, [route_node(acids[i]), route_node(
            an, [route_node(nitro[i])])])))
    for i in range(3):
        t = nid()
        an = step("nitro_reduction", [nitro[i + 1]], "b%02d-1" % t)
        tgt = step("aryl_sulfonamide", [sulfonyl[i], an], "b%02d-2" % t)
        stock.update([nitro[i + 1], sulfonyl[i]])
        routes.append((t, tgt, route_node(tgt, [route_node(sulfonyl[i]), route_node(
            an, [route_node(nitro[i + 1])])])))
    for i in range(3):
        t = nid()
        an = step("nitro_reduction", [nitro[(i + 2) % 5]], "b%02d-1" % t)
        tgt = step("urea", [isocyan[i], an], "b%02d-2" % t)
        stock.update([nitro[(i + 2) % 5], isocyan[i]])
        routes.append((t, tgt, route_node(tgt, [route_node(isocyan[i]), route_node(
            an, [route_node(nitro[(i + 2) % 5])])])))
    # ester hydrolysis, then amide coupling with a stock amine (2 steps)
    for i in range(5):
        t = nid()
        acid = step("ester_hydrolysis", [esters[i]], "b%02d-1" % t)
        tgt = step("amide", [acid, amines[i]], "b%02d-2" % t)
        stock.update([esters[i], amines[i]])
        routes.append((t, tgt, route_node(tgt, [route_node(amines[i]), route_node(
            acid, [route_node(esters[i])])])))
    # convergent: ester hydrolysis and nitro reduction, then coupling (3 steps)
    for i in range(5):
        t = nid()
        e = esters[5 + i]
        n = nitro[i]
        acid = step("ester_hydrolysis", [e], "b%02d-1" % t)
        an = step("nitro_reduction", [n], "b%02d-2" % t)
        tgt = step("anilide", [acid, an], "b%02d-3" % t)
        stock.update([e, n])
        routes.append((t, tgt, route_node(tgt, [
            route_node(acid, [route_node(e)]), route_node(an, [route_node(n)])])))

    distractors = ["CCO", "CC(=O)O", "c1ccccc1", "Nc1ccccc1C", "OC(=O)c1ccc(O)cc1",
                   "CCN(CC)CC", "ClCCl", "O=C(O)C(F)(F)F"]
    stock.update(distractors)
    stock = {canon(s) for s in stock}
    for rxn in reactions:
        product = canon(rxn["rxn_smiles"].split(">>")[1])
        assert product not in stock, product
    return routes, reactions, sorted(stock)


# ---------------------------------------------------------------------------
# Route-builder corpus


def patent_corpus():
    """Thirty patents of unmapped reactions.

    Molecules are plain chains "C...CO" of distinct lengths. Expected
    retained routes: the 16 primary routes; duplicates, single-step patents,
    loops and contained routes are dropped.
    """
    counter = [0]

    def mol():
        counter[0] += 1
        return "C" * counter[0] + "O"

    records = []

    def rx(patent, reactants, product):
        records.append({
            "id": "pat-%03d" % (len(records) + 1),
            "patent_id": patent,
            "rxn_smiles": ".".join(reactants) + ">>" + product,
        })

    primary = []
    for p in range(16):
        pid = "P%02d" % (p + 1)
        t, i1, a, b, c = mol(), mol(), mol(), mol(), mol()
        rx(pid, [i1, a], t)
        rx(pid, [b, c], i1)
        chain = [(pid, [i1, a], t), (pid, [b, c], i1)]
        if p % 2 == 0:
            d = mol()
            rx(pid, [d], b)
            chain.append((pid, [d], b))
        primary.append(chain)
    # exact duplicates of three primary routes in other patents
    for p in range(3):
        pid = "D%02d" % (p + 1)
        for _, reactants, product in primary[p]:
            rx(pid, reactants, product)
    # contained routes inside three-step primaries: two lower parts and two
    # upper parts with an unexpanded leaf
    for p in range(4):
        pid = "S%02d" % (p + 1)
        src = primary[4 + 2 * p]
        part = src[1:] if p < 2 else src[:2]
        for _, reactants, product in part:
            rx(pid, reactants, product)
    # single-step patents
    for p in range(4):
        pid = "O%02d" % (p + 1)
        rx(pid, [mol(), mol()], mol())
    # loops: R <- T, T <- I, I <- T
    for p in range(3):
        pid = "L%02d" % (p + 1)
        r, t, i, z, x, y = mol(), mol(), mol(), mol(), mol(), mol()
        rx(pid, [t, z], r)
        rx(pid, [i, x], t)
        rx(pid, [t, y], i)
    expected = {
        "patents": 30,
        "retained": 16,
        "single_step": 4,
        "duplicates": 3,
        "loops": 3,
        "subroutes": 4,
    }
    return records, expected


# ---------------------------------------------------------------------------
# Filter suite


def mapped(smiles_by_role):
    return smiles_by_role


def chain_amine(n):
    return "N" + "C" * n


def build_filter_cases():
    """Crafted reactions; expectations come from the RDKit rule oracle below."""
    cases = []

    def add(name, rule, rxn, design=None):
        cases.append({"id": name, "rule": rule, "rxn_smiles": rxn,
                      "design_unmapped_common": design})

    amide = run_forward("amide", ["OC(=O)c1ccccc1", "NCc1ccccc1"])[0]

    # 1. reactant count
    three = ("[CH3:11][C:1](=[O:2])[OH].[NH2:3][CH2:4][c:5]1[cH:6][cH:7][cH:8][cH:9][cH:10]1."
             "[CH3:13][CH:12]=O>>[CH3:11][C:1](=[O:2])[N:3]([CH2:4][c:5]1[cH:6][cH:7]"
             "[cH:8][cH:9][cH:10]1)[CH2:12][CH3:13]")
    four = ("[CH3:11][C:1](=[O:2])[OH].[NH2:3][CH2:4][c:5]1[cH:6][cH:7][cH:8][cH:9][cH:10]1."
            "[CH3:13][CH:12]=O.[CH3:14][Br]>>[CH3:11][C:1](=[O:2])[N:3]([CH2:4][c:5]1[cH:6]"
            "[cH:7][cH:8][cH:9][cH:10]1)[CH:12]([CH3:14])[CH3:13]")
    add("max_reactants_pass", "max_reactants", three)
    add("max_reactants_fail", "max_reactants", four)
    # 2. product count
    add("single_product_pass", "single_product", amide)
    add("single_product_fail", "single_product", amide + ".[OH2]")
    # 3. reactant atoms in [10, 70]
    add("reactant_atom_range_pass", "reactant_atom_range",
        "[CH3:1][CH2:2][CH2:3][CH2:4][CH2:5][CH2:6][CH2:7][CH2:8][C:9]([CH3:10])=[O:11]>>"
        "[CH3:1][CH2:2][CH2:3][CH2:4][CH2:5][CH2:6][CH2:7][CH2:8][CH:9]([CH3:10])[OH:11]")
    add("reactant_atom_range_fail", "reactant_atom_range",
        "[CH3:1][CH2:2][CH2:3][CH2:4][CH2:5][C:6]([CH3:7])=[O:8]>>"
        "[CH3:1][CH2:2][CH2:3][CH2:4][CH2:5][CH:6]([CH3:7])[OH:8]")
    # 4. product atoms >= 8
    add("min_product_atoms_pass", "min_product_atoms",
        "[CH3:1][CH2:2][CH:3]([CH3:4])[CH2:5][C:6](=[O:7])[O:8]CC>>"
        "[CH3:1][CH2:2][CH:3]([CH3:4])[CH2:5][C:6](=[O:7])[OH:8]")
    add("min_product_atoms_fail", "min_product_atoms",
        "[CH3:1][C:2](=[O:3])[O:4]Cc1ccccc1>>[CH3:1][C:2](=[O:3])[OH:4]")
    # 5. reactant atoms < 4 x product atoms (product has 8 atoms)
    acid8 = ("[CH3:1][CH2:2][CH:3]([CH3:4])[CH2:5][C:6](=[O:7])[O:8]",
             "[CH3:1][CH2:2][CH:3]([CH3:4])[CH2:5][C:6](=[O:7])[OH:8]")
    add("reactant_product_ratio_pass", "reactant_product_ratio",
        acid8[0] + "C" * 23 + ">>" + acid8[1])
    add("reactant_product_ratio_fail", "reactant_product_ratio",
        acid8[0] + "C" * 24 + ">>" + acid8[1])
    # 6. unmapped reactant atoms < 30 (product has 20 atoms)
    acid20 = "".join("[CH3:1]" if i == 0 else "[CH2:%d]" % (i + 1) for i in range(17))
    head = acid20 + "[C:18](=[O:19])[O:20]"
    tail = acid20 + "[C:18](=[O:19])[OH:20]"
    add("max_unmapped_reactant_atoms_pass", "max_unmapped_reactant_atoms",
        head + "C" * 29 + ">>" + tail)
    add("max_unmapped_reactant_atoms_fail", "max_unmapped_reactant_atoms",
        head + "C" * 30 + ">>" + tail)
    # 7. non-contributing reactants
    add("contributing_reactants_pass", "contributing_reactants",
        amide.replace(">>", ".CCN(CC)CC>>"))
    add("contributing_reactants_fail", "contributing_reactants",
        "OC(=O)c1ccccc1.NCc1ccccc1>>" + amide.split(">>")[1])
    # 8. orphan atoms <= 1
    add("max_orphan_atoms_pass", "max_orphan_atoms",
        "[CH3:1][CH2:2][CH:3]([CH3:4])[CH2:5][C:6](=[O:7])[O:8][CH2:98][CH3:10]>>"
        "[CH3:1][CH2:2][CH:3]([CH3:4])[CH2:5][C:6](=[O:7])[OH:8]".replace("[CH3:10]", "C"))
    add("max_orphan_atoms_fail", "max_orphan_atoms",
        "[CH3:1][CH2:2][CH:3]([CH3:4])[CH2:5][C:6](=[O:7])[O:8][CH2:98][CH3:99]>>"
        "[CH3:1][CH2:2][CH:3]([CH3:4])[CH2:5][C:6](=[O:7])[OH:8]")
    # 9. unmapped atoms of the common substructure <= 10
    acid = "[OH][C:1](=[O:2])[c:3]1[cH:4][cH:5][cH:6][cH:7][cH:8]1"
    prod = "[C:1](=[O:2])([c:3]1[cH:4][cH:5][cH:6][cH:7][cH:8]1)"
    add("max_unmapped_common_atoms_pass", "max_unmapped_common_atoms",
        acid + ".[NH2:9]" + "C" * 10 + ">>" + prod + "[NH:9]" + "C" * 10, 10)
    add("max_unmapped_common_atoms_fail", "max_unmapped_common_atoms",
        acid + ".[NH2:9]" + "C" * 11 + ">>" + prod + "[NH:9]" + "C" * 11, 11)
    # 10. product not among reactants
    add("product_not_in_reactants_pass", "product_not_in_reactants", amide)
    add("product_not_in_reactants_fail", "product_not_in_reactants",
        amide.replace(">>", ".O=C(NCc1ccccc1)c1ccccc1>>"))
    # 11. aromatic bond between mapped and unmapped atoms
    add("no_mapped_unmapped_aromatic_bond_pass", "no_mapped_unmapped_aromatic_bond",
        acid + ".[NH2:9][CH2:10][CH2:11][CH3:12]>>" + prod + "[NH:9][CH2:10][CH2:11][CH3:12]")
    add("no_mapped_unmapped_aromatic_bond_fail", "no_mapped_unmapped_aromatic_bond",
        acid.replace("[cH:6]", "[cH]") + ".[NH2:9][CH2:10][CH2:11][CH3:12]>>"
        + prod.replace("[cH:6]", "[cH]") + "[NH:9][CH2:10][CH2:11][CH3:12]")
    return cases


RULES = ["max_reactants", "single_product", "reactant_atom_range", "min_product_atoms",
         "reactant_product_ratio", "max_unmapped_reactant_atoms", "contributing_reactants",
         "max_orphan_atoms", "max_unmapped_common_atoms", "product_not_in_reactants",
         "no_mapped_unmapped_aromatic_bond"]


def oracle(case):
    """Independent RDKit evaluation of the rule list."""
    lhs, _, rhs = case["rxn_smiles"].split(">")
    reactants = [Chem.MolFromSmiles(s) for s in lhs.split(".")]
    product_parts = rhs.split(".")
    product = Chem.MolFromSmiles(rhs)
    pmaps = {a.GetAtomMapNum() for a in product.GetAtoms() if a.GetAtomMapNum()}
    kept = [m for m in reactants
            if any(a.GetAtomMapNum() in pmaps for a in m.GetAtoms() if a.GetAtomMapNum())]
    rmaps = {a.GetAtomMapNum() for m in kept for a in m.GetAtoms() if a.GetAtomMapNum()}
    r_atoms = sum(m.GetNumHeavyAtoms() for m in kept)
    p_atoms = product.GetNumHeavyAtoms()
    unmapped = sum(1 for m in kept for a in m.GetAtoms() if a.GetAtomMapNum() == 0)
    orphans = sum(1 for m in kept for a in m.GetAtoms()
                  if a.GetAtomMapNum() and a.GetAtomMapNum() not in pmaps)
    orphans += sum(1 for a in product.GetAtoms()
                   if a.GetAtomMapNum() and a.GetAtomMapNum() not in rmaps)

    def plain(m):
        m = Chem.Mol(m)
        for a in m.GetAtoms():
            a.SetAtomMapNum(0)
        return Chem.MolToSmiles(m)

    prod_plain = plain(product)
    in_reactants = any(plain(m) == prod_plain for m in reactants)

    def bad_aromatic(m):
        return any(b.GetIsAromatic()
                   and (b.GetBeginAtom().GetAtomMapNum() > 0) != (b.GetEndAtom().GetAtomMapNum() > 0)
                   for b in m.GetBonds())

    aromatic = bad_aromatic(product) or any(bad_aromatic(m) for m in kept)
    common = case["design_unmapped_common"] or 0
    passed = {
        "max_reactants": len(kept) <= 3,
        "single_product": len(product_parts) == 1,
        "reactant_atom_range": 10 <= r_atoms <= 70,
        "min_product_atoms": p_atoms >= 8,
        "reactant_product_ratio": r_atoms < 4 * p_atoms,
        "max_unmapped_reactant_atoms": unmapped < 30,
        "contributing_reactants": len(kept) > 0,
        "max_orphan_atoms": orphans <= 1,
        "max_unmapped_common_atoms": common <= 10,
        "product_not_in_reactants": not in_reactants,
        "no_mapped_unmapped_aromatic_bond": not aromatic,
    }
    return [r for r in RULES if not passed[r]]


# ---------------------------------------------------------------------------
# Molecules


def molecules():
    seen, out = set(), []
    pool = [s for group in BLOCKS.values() for s in group]
    pool += ["c1ccc2[nH]ccc2c1", "c1ccc2ccccc2c1", "C1=CC=CC=C1", "OC[C@H](O)CO",
             "C[N+](C)(C)C", "[O-]C(=O)C", "N#Cc1ccccc1", "c1cn[nH]c1", "c1ccsc1",
             "FC(F)(F)c1ccccc1", "CC(C)(C)c1ccccc1", "O=C1CCCCC1", "C1CC2CCC1C2",
             "c1ccc(-c2ccccc2)cc1", "Clc1ccc(Br)cc1I", "C=CC=O", "CC#N"]
    for s in pool:
        m = Chem.MolFromSmiles(s)
        c = Chem.MolToSmiles(m)
        if c in seen:
            continue
        seen.add(c)
        spellings = set()
        for _ in range(12):
            spellings.add(Chem.MolToSmiles(m, doRandom=True, canonical=False))
        spellings.add(Chem.MolToSmiles(m, kekuleSmiles=True))
        out.append({
            "smiles": c,
            "spellings": sorted(spellings),
            "heavy_atoms": m.GetNumHeavyAtoms(),
            "mol_weight": round(Descriptors.MolWt(m), 4),
        })
    return out


MATCH_MOLECULES = [
    "CCO", "CC(=O)O", "c1ccccc1", "Cc1ccccc1", "c1ccncc1", "c1ccoc1", "c1cc[nH]c1",
    "C1CCCCC1", "CC(C)(C)O", "CC(N)=O", "NCC(=O)O", "C#CC", "C=CC=C", "CC[N+](C)(C)C",
    "CC(=O)[O-]", "ClC(Cl)Cl", "OCCO", "NCCN", "C1CC1", "CS(N)(=O)=O", "CCOC(C)=O",
    "c1ccsc1", "OC1CCNCC1", "Brc1ccccc1", "CN(C)C=O", "C=O", "CC#N", "NC(N)=O",
    "c1c[nH]cn1", "COC", "CCCCCCCC", "C1CC2CCC1C2",
]

MATCH_PATTERNS = [
    "[#6]", "c", "[c:1][c:2]", "[#6]-[#8]", "C=O", "[C:1](=[O:2])[O;H1]", "[N;H2]",
    "[#7,#8]", "[!#6;!#1]", "c:c:c", "[#6]~[#6]~[#6]", "[C;D3]", "[C;X4;H3]", "[O-]",
    "[N+]", "C1CC1", "[C;H0;D3;+0:1](=[O;H0;D1;+0:2])-[#7]", "*~*", "[a]", "[A;!C]",
    "[#6]#[#6,#7]", "[c;H1]:n", "[Cl,Br]-c", "[O;H1]-[C:1]-[C:2]", "[C,N]-[C,N]-[C,N]-[C,N]",
]


def matching_pairs():
    rows = []
    for smi in MATCH_MOLECULES:
        mol = Chem.MolFromSmiles(smi)
        assert mol.GetNumAtoms() <= 8, smi
        for sma in MATCH_PATTERNS:
            patt = Chem.MolFromSmarts(sma)
            assert patt.GetNumAtoms() <= 4, sma
            emb = mol.GetSubstructMatches(patt, uniquify=False, maxMatches=1000000,
                                          useChirality=False)
            rows.append({"smiles": smi, "smarts": sma,
                         "embeddings": sorted(list(e) for e in emb)})
    return rows


def write_jsonl(name, rows):
    with open(os.path.join(HERE, name), "w") as f:
        for r in rows:
            f.write(json.dumps(r, sort_keys=False) + "\n")


def main():
    write_jsonl("reactions.jsonl", single_step_reactions())

    routes, reactions, stock = bench_routes()
    write_jsonl("bench_reactions.jsonl", reactions)
    with open(os.path.join(HERE, "bench_targets.txt"), "w") as f:
        for t, smi, _ in routes:
            f.write("%s t%02d\n" % (smi, t))
    with open(os.path.join(HERE, "bench_stock.txt"), "w") as f:
        f.write("\n".join(stock) + "\n")
    write_jsonl("bench_routes.jsonl", [{"id": "t%02d" % t, "route": r} for t, _, r in routes])

    corpus, expected = patent_corpus()
    write_jsonl("patent_corpus.jsonl", corpus)
    with open(os.path.join(HERE, "patent_expected.json"), "w") as f:
        json.dump(expected, f, indent=2)
        f.write("\n")

    cases = build_filter_cases()
    for c in cases:
        c["expected_failures"] = oracle(c)
        c["expected_accept"] = not c["expected_failures"]
        del c["design_unmapped_common"]
    write_jsonl("filter_suite.jsonl", cases)

    write_jsonl("molecules.jsonl", molecules())
    write_jsonl("matching.jsonl", matching_pairs())


if __name__ == "__main__":
    main()
