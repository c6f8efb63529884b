# %% [markdown]
# # A degree-zero class in characteristic zero
#
# We work in R = Q[u,v,w,x,y,z] modulo I^t, where I is generated by the
# 2x2 minors of the matrix with rows (u, v, w) and (x, y, z). Local
# cohomology is computed through the Čech complex on the six variables.

# %%
from thickcech import cech, scenario as sc
from thickcech.localization import thickening

R = thickening(2)
D1, D2, D3 = R.minors
print("minors:", D1, "|", D2, "|", D3)
print("multidegree of D3:", D3.multidegree)

# %% [markdown]
# Inverting v and z makes D1 nilpotent of order t, so w*y = v*z - D1 is a
# unit there even though neither w nor y was inverted.

# %%
site = R.site("vz")
inv_wy = site.fraction("1", "wy")
print("1/(wy) at {v,z}:", inv_wy)
print("check:", inv_wy * site.element("wy") == site.one())

# %% [markdown]
# The 3-cochain built from truncated logarithms of D_i / monomial.

# %%
eta = sc.eta_char0(2)
print(eta)
print("cocycle:", bool(cech.is_cocycle(eta)))
print("coboundary at cutoff 4:", cech.is_coboundary(eta, cutoff=4))

# %% [markdown]
# The whole degree-(0,0,0,0) slice of H^3, for t = 1, 2, 3.

# %%
for t in (1, 2, 3):
    rep = cech.cohomology_rank(3, t, (0, 0, 0, 0))
    print(f"t={t}: rank {rep.rank}, stable={rep.stable}, cutoff {rep.cutoff}")

# %% [markdown]
# Why the class exists: the three truncated logs sum to zero in R/I^t,
# but not in R/I^(t+1).

# %%
for t in (2, 3):
    print(t, sc.truncated_log_sum(t).is_zero(),
          sc.truncated_log_sum(t, ring=thickening(t + 1)).is_zero())
