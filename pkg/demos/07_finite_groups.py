"""Character tables from scratch, and the branching identity for finite groups."""
from padicps import finite_rep as fr

G = fr.sl2(5)
table = fr.character_table(G)
print("SL_2(F_5): order", G.order, "degrees", table.degrees)

borel = fr.subgroup_table(table, fr.upper_borel_sl2(5))
report = fr.verify_identities(table, borel)
print("index-weighted branching identity over the Borel subgroup:", report.passed)

ind = fr.induced_character(table, borel, [1] * len(borel.classes))
print("Ind_B(1) decomposes with multiplicities", table.decompose(ind))
print("strongly admissible with bound 1:", fr.strong_adm_check(table, ind, 1).passed)
print("two copies of the regular representation:",
      fr.strong_adm_check(table, fr.regular_character(table, 2), 1).passed)
