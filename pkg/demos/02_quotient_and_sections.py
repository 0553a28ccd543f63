"""The combinatorial quotient: classes, order, sections, divisors.

Collapsing each vertical flow line segment between consecutive centers to
a point turns Im H into a branched object: over every base point z the
classes are the open gaps between fiber points plus the fiber points
themselves.  Sections choose one gap per fiber; the divisor of a section
pair counts fiber points between the chosen gaps, with sign.
"""
from ainfty import (base_section, class_of, compare_classes, delta_set,
                    fiber, power_law, same_class, section_divisor)

cfg = power_law(2.0)

print("fiber bases inside radius 10:", sorted(delta_set(cfg, 10.0), key=abs))
f = fiber(cfg, 0j, window=(-20.0, 0.0))
print("axis fiber in [-20, 0]:", f.heights, "order type", f.order_type)

for pt in [(-2.5, 0j), (-4.0, 0j), (7.0, 1 + 0j)]:
    cls = class_of(cfg, pt)
    kind = f"fixed point of center {cls.fixed}" if cls.is_fixed else \
        f"gap between centers {cls.lower} and {cls.upper}"
    print(f"class of {pt}: {kind}")

print("\nsame class? (-2.5,0) ~ (-3.9,0):", same_class(cfg, (-2.5, 0j), (-3.9, 0j)))
print("same class? (-2.5,0) ~ (-0.5,0):", same_class(cfg, (-2.5, 0j), (-0.5, 0j)))

g1 = class_of(cfg, (-2.5, 0j))
g2 = class_of(cfg, (-0.5, 0j))
print("order of the two gaps:", compare_classes(cfg, g1, g2).value)

# Sections: the base section takes the gap containing height 0 everywhere.
o = base_section(cfg)
s = o.deviate(0j, g1)                      # move to the gap (-4, -1) over 0
k = section_divisor(cfg, o, s, disk_radius=10.0)
print("\ndivisor of (base, deviated) section pair:", k.as_dict())
print("antisymmetry:", section_divisor(cfg, s, o, 10.0).as_dict())
