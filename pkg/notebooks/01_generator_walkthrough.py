# %% [markdown]
# # Regrowing a memory from one neuron
#
# A Hebbian weight matrix is split into a strictly lower-triangular
# generator under an update order, then a single known neuron regrows the
# whole stored vector one component at a time.

# %%
import numpy as np

from recall_lab import Fragment, MemorySet, generate, hebbian_train, split_lower, update_order_from_sites

m = np.array([1, -1, -1, 1, 1, -1])
T = hebbian_train(MemorySet.from_vectors([m]))
print(T)

# %% [markdown]
# Start from neuron 2. The remaining neurons are visited by distance from
# it, so the generator matrix lives in that permuted index space.

# %%
order = update_order_from_sites([2], len(m))
g = split_lower(T, order)
print("update order:", order.pi)
print(g.B)
assert np.array_equal(g.B + g.B.T, T[np.ix_(order.index, order.index)])

# %%
frag = Fragment.from_memory(m, order)
print("fragment:", frag.values)
out = generate(g, frag)
print("generated:", out, "stored:", m)

# %% [markdown]
# With two memories the Hebbian field is shared and one-site recall starts
# to fail. Try it from every site:

# %%
ms = MemorySet.from_vectors([m, [1, 1, -1, -1, 1, 1]])
T2 = hebbian_train(ms)
for site in range(ms.n):
    g = split_lower(T2, update_order_from_sites([site], ms.n))
    print(site, [bool(np.array_equal(generate(g, Fragment.from_memory(x, g.order)), x)) for x in ms])
