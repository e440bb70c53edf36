"""Watch the fuzzy resonance engine commit, match, and reset on a toy corpus.

Four 1-D patterns form two far-apart groups. At vigilance 0.8 the engine
keeps the groups in separate categories; sweeping vigilance shows how the
category count moves from "one box fits all" to "every distinct pattern its
own box".

Run:  python3 demos/02_fuzzy_art_walkthrough.py
"""

import numpy as np

from fardiff import ArtParams, choice, complement_code, predict, train, vigilance_pass

patterns = [[0.0], [0.05], [0.9], [0.95]]
print("patterns:", [p[0] for p in patterns])

# --- complement coding --------------------------------------------------------
# Inputs are coded x -> (x, 1-x), so every coded pattern has the same L1 mass
# and learned prototypes cannot erode to nothing.
coded = complement_code(np.array(patterns[1]))
print(f"complement coded {patterns[1][0]} -> {coded}  (L1 norm = {coded.sum():g})")

# --- training at moderate vigilance -------------------------------------------
params = ArtParams(rho=0.8, beta=1.0)
model, assign = train(patterns, params)
print(f"\nvigilance 0.8: {assign.n_categories} categories, "
      f"assignment {assign.category.tolist()}, stable after {assign.epochs} epochs")
for j, w in enumerate(model.weights):
    print(f"  prototype {j}: {w}")

# Why 0.9 refused to join the first category: its match ratio against the
# group-0 prototype is far below the vigilance bar.
w0 = model.weights[0]
x = complement_code(np.array([0.9]))
ratio = np.minimum(x, w0).sum() / x.sum()
print(f"\nmatch ratio of pattern 0.9 against prototype 0: {ratio:.3f} "
      f"(vigilance_pass -> {vigilance_pass(x, w0, 0.8)})")
print(f"choice values: T0 = {choice(x, w0, 0.001):.3f}, "
      f"T1 = {choice(x, model.weights[1], 0.001):.3f}")

# --- vigilance sweep -----------------------------------------------------------
print("\ncategory count as vigilance rises:")
for rho in (0.0, 0.5, 0.8, 0.95, 1.0):
    _, a = train(patterns, ArtParams(rho=rho, beta=1.0))
    print(f"  rho = {rho:4.2f}: {a.n_categories} categories  {a.category.tolist()}")

# --- prediction without learning ------------------------------------------------
pred = predict(model, [[0.02], [0.93], [0.5]])
print(f"\npredict on fresh patterns [0.02, 0.93, 0.5]: {pred.category.tolist()}")
print("(-1 marks a pattern that failed vigilance against every committed")
print(" category; prediction never grows or edits the model)")
