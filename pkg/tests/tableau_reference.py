"""Hand-typed reference for the rank-3 table of proper coideal subalgebras.

Per row: star flag, R and T for k = 3, 2, 1, PBW generators per k, the
coideal generators and their point diagrams.  Row (2,2,1) is typed as it
was received, including R_1 = {1,2,3}; see ERRATA.
"""

E = ()

ROWS = {
    (3, 2, 1): dict(star=True, R=((3,), (3,), (3,)), T=((3,), (3,), (3,)),
                    pbw=(("x3",), ("[x2x3]",), ("[x1x2x3]",)),
                    rcs=("[x1x2x3]",), diagrams=("ooo*",)),
    (3, 2, 0): dict(star=True, R=(E, (2, 3), (2, 3)), T=(E, (2, 3), (2, 3)),
                    pbw=(E, ("x2", "[x3x2]"), ("[x1x2]", "[x3[x1x2]]")),
                    rcs=("[x3[x1x2]]",), diagrams=("oo**",)),
    (3, 1, 1): dict(star=False, R=((3,), (2,), (3,)), T=((3,), (2, 3), (3,)),
                    pbw=(("x3",), ("x2", "[x3x2]"), ("[x1x2x3]",)),
                    rcs=("[x1x2x3]", "x2"), diagrams=("ooo*", ".o*.")),
    (3, 1, 0): dict(star=False, R=(E, (2,), (1, 3)), T=(E, (2,), (1, 2, 3)),
                    pbw=(E, ("x2",), ("x1", "[x2x1]", "[x3x2x1]")),
                    rcs=("[x3x2x1]", "x2"), diagrams=("o***", ".o*.")),
    (3, 0, 1): dict(star=False, R=((3,), E, (1, 3)), T=((3,), E, (1, 3)),
                    pbw=(("x3",), E, ("x1", "[[x2x3]x1]")),
                    rcs=("[[x2x3]x1]",), diagrams=("o*o*",)),
    (3, 0, 0): dict(star=True, R=(E, E, (1, 2, 3)), T=(E, E, (1, 2, 3)),
                    pbw=(E, E, ("x1", "[x2x1]", "[x3x2x1]")),
                    rcs=("[x3x2x1]",), diagrams=("o***",)),
    (2, 2, 1): dict(star=True, R=((3,), (3,), (1, 2, 3)), T=((3,), (3,), (1, 2, 3)),
                    pbw=(("x3",), ("[x2x3]",), ("x1", "[x2x1]", "[x3x2x1]")),
                    rcs=("[x3x2x1]", "[x2x3]"), diagrams=("o***", ".oo*")),
    (2, 2, 0): dict(star=False, R=(E, (2, 3), (2,)), T=(E, (2, 3), (2,)),
                    pbw=(E, ("x2", "[x3x2]"), ("[x1x2]",)),
                    rcs=("[x1x2]", "[x3x2]"), diagrams=("oo*.", ".o**")),
    (2, 1, 1): dict(star=True, R=((3,), (2,), (2,)), T=((3,), (2, 3), (2, 3)),
                    pbw=(("x3",), ("x2", "[x3x2]"), ("[x1x2]", "[x3[x1x2]]")),
                    rcs=("[x1x2]", "x3"), diagrams=("oo*.", "..o*")),
    (2, 1, 0): dict(star=False, R=(E, (2,), (2,)), T=(E, (2,), (2,)),
                    pbw=(E, ("x2",), ("[x1x2]",)),
                    rcs=("[x1x2]",), diagrams=("oo*.",)),
    (2, 0, 1): dict(star=False, R=((3,), E, (1, 2)), T=((3,), E, (1, 2, 3)),
                    pbw=(("x3",), E, ("x1", "[x2x1]", "[x3x2x1]")),
                    rcs=("[x2x1]", "x3"), diagrams=("o**.", "..o*")),
    (2, 0, 0): dict(star=False, R=(E, E, (1, 2)), T=(E, E, (1, 2)),
                    pbw=(E, E, ("x1", "[x2x1]")),
                    rcs=("[x2x1]",), diagrams=("o**.",)),
    (1, 2, 1): dict(star=False, R=((3,), (3,), (1,)), T=((3,), (3,), (1, 3)),
                    pbw=(("x3",), ("[x2x3]",), ("x1", "[[x2x3]x1]")),
                    rcs=("[x2x3]", "x1"), diagrams=(".oo*", "o*..")),
    (1, 2, 0): dict(star=True, R=(E, (2, 3), (1,)), T=(E, (2, 3), (1, 2, 3)),
                    pbw=(E, ("x2", "[x3x2]"), ("x1", "[x2x1]", "[x3x2x1]")),
                    rcs=("[x3x2]", "x1"), diagrams=(".o**", "o*..")),
    (0, 2, 1): dict(star=False, R=((3,), (3,), E), T=((3,), (3,), E),
                    pbw=(("x3",), ("[x2x3]",), E),
                    rcs=("[x2x3]",), diagrams=(".oo*",)),
    (0, 2, 0): dict(star=False, R=(E, (2, 3), E), T=(E, (2, 3), E),
                    pbw=(E, ("x2", "[x3x2]"), E),
                    rcs=("[x3x2]",), diagrams=(".o**",)),
}

# Row (2,2,1): R_1 must have maximum k + theta_1 - 1 = 2, so {1,2,3} cannot
# be right; {1,2,3} is the R_1 of row (3,0,0).  With R_1 = {1,2} the simple
# root rule yields [x2x1] where the typed row has [x3x2x1].
ERRATA = {
    (2, 2, 1): dict(R=((3,), (3,), (1, 2)), rcs=("[x2x1]", "[x2x3]"), diagrams=("o**.", ".oo*")),
}
