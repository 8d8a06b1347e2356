# %% [markdown]
# # Widrow-Hoff versus the row-wise delta rule
#
# LMS makes ``W x = x`` for every memory but says nothing about the
# triangular generator. The delta rule instead corrects exactly the rows of
# the generator that regrow a wrong value.

# %%
import numpy as np

from recall_lab import (
    LearningConfig,
    assign_sites,
    delta_train_all,
    hebbian_train,
    random_memory_set,
    retrieves,
    split_lower,
    widrow_hoff_train,
)

ms = random_memory_set(12, 4, seed=3)
print(ms.memories)

# %% Widrow-Hoff, symmetrised, recalled from active sites
T, report = widrow_hoff_train(ms, LearningConfig(eta=0.1))
print(report)
assignment = assign_sites(ms, T, 1)
print("sites:", assignment.assignment)
print([retrieves(split_lower(T, o), x) for o, x in zip(assignment.orders(ms.n), ms)])

# %% Delta rule on a shared store, sites picked from the Hebbian field
assignment = assign_sites(ms, hebbian_train(ms), 1)
gens, report = delta_train_all(ms, assignment, LearningConfig(eta=0.1))
print(report)
print([retrieves(g, x) for g, x in zip(gens, ms)])

# %% [markdown]
# All generators view the same symmetric store; weights are integer
# multiples of the learning constant.

# %%
store = gens[0].symmetric()
print(np.round(store / 0.1).astype(int))
