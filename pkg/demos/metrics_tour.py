"""
Scoring utterances from raw CoNLL-U
===================================

Walks one small two-party dialogue from text to per-utterance
complexity numbers, printing every intermediate quantity.
"""

from synconv import (ComplexityConfig, complexity_series, inventory_counts,
                     isc_score, load_corpus, parse_conllu, tree_metrics)

SAMPLE = """\
# dialogue_id = demo
# speaker = A
# utterance_id = 1
1\tWir\twir\tPRON\t_\tPronType=Prs\t2\tnsubj\t_\t_
2\tbrauchen\tbrauchen\tVERB\t_\tVerbForm=Fin\t0\troot\t_\t_
3\tzwei\tzwei\tNUM\t_\tNumType=Card\t4\tnummod\t_\t_
4\tStühle\tStuhl\tNOUN\t_\tNumber=Plur\t2\tobj\t_\t_

# dialogue_id = demo
# speaker = B
# utterance_id = 2
1\tIch\tich\tPRON\t_\tPronType=Prs\t2\tnsubj\t_\t_
2\tdenke\tdenken\tVERB\t_\tVerbForm=Fin\t0\troot\t_\t_
3\twir\twir\tPRON\t_\tPronType=Prs\t8\tnsubj\t_\t_
4\thaben\thaben\tAUX\t_\tVerbForm=Fin\t8\taux\t_\t_
5\talle\tall\tDET\t_\t_\t7\tdet\t_\t_
6\tgroßen\tgroß\tADJ\t_\tDegree=Pos\t7\tamod\t_\t_
7\tKisten\tKiste\tNOUN\t_\tNumber=Plur\t8\tobj\t_\t_
8\tgepackt\tpacken\tVERB\t_\tVerbForm=Part\t2\tccomp\t_\t_
"""

trees = parse_conllu(SAMPLE)

# Per-tree structural measurements. The second utterance nests a clause
# under "denke", which shows up in depth and in the words-per-head ratio.
for tree in trees:
    m = tree_metrics(tree)
    words = " ".join(t.form for t in tree.tokens)
    print(f"{words!r}")
    print(f"  tokens counted:   {m.length}")
    print(f"  heads (incl. virtual root): {m.head_count}")
    print(f"  depth:            {m.depth}")
    print(f"  branching factor: {m.branching_factor:.4f}")

# The scalar score blends words-per-head with depth; lambda picks the blend.
corpus = load_corpus(trees)
for record in complexity_series(corpus):
    print(f"{record.role:<9} position {record.position}: sc = {record.sc}")

# Same corpus, but weighting depth only:
depth_only = ComplexityConfig(mix=0.0)
for record in complexity_series(corpus, config=depth_only):
    print(f"{record.role:<9} position {record.position}: depth-only sc = {record.sc}")

# The inventory-based alternative counts marked constructions instead.
for tree in trees:
    counts = inventory_counts(tree)
    print(f"subordinators={counts.subordinators} wh={counts.wh_words} "
          f"nonfinite={counts.nonfinite_verbs} nominals={counts.nominals} "
          f"-> isc {isc_score(tree)}")
