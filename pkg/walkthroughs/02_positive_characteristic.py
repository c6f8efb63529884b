# %% [markdown]
# # Families of classes in characteristic p
#
# With q the largest power of p below t and q2 the smallest power of p with
# q + q2 >= t, ratios such as alpha = vx/uy give cocycles of multidegree
# (0,0,0, +-(q-m)) for every m <= q divisible by q2.

# %%
from thickcech import cech, scenario as sc

p, t = 3, 4
params = sc.charp_params(p, t)
print(params, "expected classes:", params.bound)

# %%
classes = sc.charp_classes(p, t)
for name, c in classes:
    result = cech.coboundary_test(c, cutoff=4, max_cutoff=t + params.q + 2)
    print(f"{name:10s} degree {c.multidegree} cocycle={bool(cech.is_cocycle(c))} "
          f"coboundary={result.outcome} (cutoff {result.cutoff})")

# %% [markdown]
# Classes in different multidegrees are independent automatically; the report
# counts how many survive within each multidegree.

# %%
report = cech.independence_report([c for _, c in classes], 4, t + params.q + 2)
print("independent classes:", report.count, "of", report.total)

# %% [markdown]
# Two components of d(eta1) factor through powers of the minors. Computed in
# the Laurent ring, the {u,w,x,y} component involves D2^q; the sign relating
# it to the factorization depends on p.

# %%
for m in params.m_list:
    print(m, sc.check_closed_forms(p, t, m, minor=2), sc.check_closed_forms(p, t, m, minor=1))
