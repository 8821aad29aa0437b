"""How the coordinate transform squeezes Lee spheres into small boxes."""

from clustercodes.lee import bounding_box_check, lee_sphere_positions, transform_nd

R = 2
sphere = sorted(lee_sphere_positions(2, R, (6, 6)))
image = [transform_nd(p) for p in sphere]

grid = {}
for q in image:
    grid[q] = "#"
rows = range(min(q[0] for q in image), max(q[0] for q in image) + 1)
cols = range(min(q[1] for q in image), max(q[1] for q in image) + 1)
print(f"radius-{R} sphere ({len(sphere)} cells) after the transform:")
for i in rows:
    print("  " + "".join(grid.get((i, j), ".") for j in cols))

for D in (2, 3):
    for r in (1, 2, 3):
        rep = bounding_box_check(D, r, 12 if D == 3 else 20)
        print(rep.line(), "box", "x".join(map(str, rep.detail["box"])))
