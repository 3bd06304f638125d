"""
Uniform and progressively spaced arrays
=======================================

Two linear arrays with the same 10 half-wavelength aperture: eleven sensors at
lambda/2, and eight sensors whose gaps grow geometrically by 1.3.
"""
import numpy as np

from nlamusic import nonuniform_progressive, steering_derivative, steering_vector, uniform_linear

ula = uniform_linear(11, 10)
nla = nonuniform_progressive(8, 5.0, "geometric", 1.3)

for g in (ula, nla):
    print(f"{g.name:>16}: length {g.array_length_hw:g} half-wavelengths")
    print("   positions (lambda):", np.round(g.p, 3))
    print("   spacings  (lambda):", np.round(g.spacings, 3))

# %%
# The steering vector is a pure phase ramp; its derivative picks up a factor
# proportional to the sensor position, so outer sensors dominate the slope.
theta = np.deg2rad(60.0)
a = steering_vector(nla, theta)
da = steering_derivative(nla, theta, order=1)
print("\n|a|      :", np.round(np.abs(a), 12))
print("|da/dth| :", np.round(np.abs(da), 3))

# %%
# A central difference reproduces the analytic derivative.
h = 1e-6
fd = (steering_vector(nla, theta + h) - steering_vector(nla, theta - h)) / (2 * h)
print("max |fd - analytic| =", np.max(np.abs(fd - da)))
