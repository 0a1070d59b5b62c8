from racb.coxeter import CoxeterDiagram

# infinite dihedral group
D1 = CoxeterDiagram.from_names(["s", "t"])
# a, b commute; c is free against both
D2 = CoxeterDiagram.from_names(["a", "b", "c"], [["a", "b"]])
# path r1 - r2 - r3 - r4 - r5 with infinite edges, every other pair commutes
D3 = CoxeterDiagram.from_names(
    ["r1", "r2", "r3", "r4", "r5"],
    [["r1", "r3"], ["r1", "r4"], ["r1", "r5"], ["r2", "r4"], ["r2", "r5"], ["r3", "r5"]],
)
# spherical rank 2
D4 = CoxeterDiagram.from_names(["a", "b"], [["a", "b"]])

ALL = {"D1": D1, "D2": D2, "D3": D3, "D4": D4}


def w(d, text):
    return d.parse_word(text)
