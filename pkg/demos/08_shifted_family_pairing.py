"""The shifted cosine family and its pairing phenomenon.

Members with shift b_n = 2n/a all launch with unit slope.  Positive members
carry exactly 4n + 1 extrema on the half-line (counting the closed left
endpoint); negative members settle after a single one.  The +- pair with
shifts -+2 eps approaches exact x-translates of one another as eps grows.
"""

from windlab.ivp import count_extrema, make_pair, pairing_offset, shifted_family

print("family at a = 0.1 (b_n = 20 n):")
for n in (1, 2, 3):
    traj = shifted_family(0.1, [n], n_out=16385)[0]
    e = count_extrema(traj, hysteresis=1e-3, include_left_boundary=True)
    print(f"  n = {n:+d}: b = {traj.b:6.1f}, extrema on [0, {traj.x[-1]:.0f}] = {e}"
          f"  (4n+1 = {4 * n + 1})")
for n in (-1, -2):
    traj = shifted_family(0.1, [n], x_max=120.0)[0]
    e = count_extrema(traj, hysteresis=1e-3, include_left_boundary=True)
    print(f"  n = {n:+d}: b = {traj.b:6.1f}, extrema = {e}")

print("\npair y'_pm = cos(pi (x +- 2 eps) y), y(0) = 1.6:")
for eps in (0.5, 0.7, 1.3, 1.5):
    plus, minus = make_pair(eps)
    offset, misfit = pairing_offset(plus, minus)
    print(f"  eps = {eps}: best shift {offset:+.2f} (expect ~{-4 * eps:+.1f}), "
          f"misfit {misfit:.4f}")
print("misfit collapses as eps grows: the pair locks into translates")
