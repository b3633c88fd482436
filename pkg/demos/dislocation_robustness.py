"""Why a lattice dislocation does not bias the gravimeter.

A relative displacement between the two spin-dependent lattices during the
hold acts as a spin-dependent energy offset delta. The pulse construction
keeps delta out of the accumulated gravity phase: the fringe peak does not
move. What delta does do is rotate the hold precession angle, so the
fringe visibility drops as cos^2(xi_eff) -- the gravimeter loses contrast,
not accuracy.
"""

from math import cos

from lattice_gravimeter import HBAR, css, rb87_params, robustness

p = rb87_params(shift_sites=2, hold_time=1e-3, gravity=0.0)
scale = HBAR / p.hold_time
deltas = [f * scale for f in (-0.2, -0.1, 0.0, 0.1, 0.2)]

print("dislocation sweep, N = 2 atoms, fringe scanned around phi = 2 pi")
print(f"{'delta [hbar/T_h]':>17}  {'peak shift [rad]':>17}  "
      f"{'visibility':>11}  {'cos^2(xi_eff)':>14}")
for delta, shift, vis in robustness(p, css(2), deltas, n_grid=4001):
    xi_eff = delta * p.hold_time / HBAR
    print(f"{delta / scale:17.2f}  {shift:17.2e}  {vis:11.8f}  "
          f"{cos(xi_eff) ** 2:14.8f}")

print()
print("the peak stays put to ~1e-12 rad while the contrast follows the "
      "cos^2 law exactly")
