"""Tour of the core market model: one provider/platform pair.

Consumer demand and infrastructure supply are two coupled power laws.
Demand falls with the service price and grows with the infrastructure
backing the service; supply grows with the platform's revenue share, the
price, and realized demand. Substituting each curve into the other yields
reduced forms in (price, share) alone, which everything else builds on.
"""

import numpy as np

from tsm import (
    MarketParams,
    check_feasibility,
    cloud_payoff,
    consumer_demand_primitive,
    demand_reduced,
    derive_coefficients,
    provider_payoff,
    supply_primitive,
    supply_reduced,
)

params = MarketParams(
    alpha=0.38,   # how much extra infrastructure lifts consumer demand
    beta=1.5,     # how much extra demand pulls in infrastructure
    gamma=0.2,    # price elasticity of demand
    psi=0.1,      # price elasticity of supply
    phi=1.5,      # supply elasticity w.r.t. the revenue share
    k1=0.5,
    f_c=1.122,    # provider cost per consumer access (USD/hour)
)

print("parameters:", params)
c = derive_coefficients(params)
print(f"composite exponents: a1={c.a1:.4f} a2={c.a2:.4f} a3={c.a3:.4f} a4={c.a4:.4f}")

price, share = 1.7, 0.4
demand = demand_reduced(price, share, params)
supply = supply_reduced(price, share, params)
print(f"\nat price={price} share={share}:")
print(f"  demand = {demand:.6f} accesses/hour")
print(f"  supply = {supply:.6f} infrastructure units")

# The reduced forms are the joint solution of the two primitive curves:
# feeding them back through the primitives reproduces them.
demand_back = consumer_demand_primitive(price, supply, params)
supply_back = supply_primitive(share, price, demand, params)
print(f"  round trip through the primitives: demand defect "
      f"{abs(demand_back - demand) / demand:.2e}, supply defect "
      f"{abs(supply_back - supply) / supply:.2e}")

print(f"\npayoffs at this operating point:")
print(f"  provider: {provider_payoff(price, share, params):+.6f} USD/hour")
print(f"  platform: {cloud_payoff(price, share, params):+.6f} USD/hour")

# Sweep the share at a fixed price: the platform trades a bigger slice of
# revenue against the infrastructure bill it has to foot.
print("\nplatform payoff across shares at price 1.7:")
for chi in (0.05, 0.2, 0.4, 0.6, 0.8, 0.95):
    print(f"  share={chi:.2f}: {cloud_payoff(price, chi, params):+.6f}")

report = check_feasibility(params)
print(f"\nbest-response existence flags: price positive={report.f1_price_positive}, "
      f"price max={report.f2_price_max}, share max={report.f3_share_max}")
print("(the closed-form equilibrium of demo 02 needs all three)")

# The reduced-form exponents scale like 1/a2 = 1/(1 - alpha*beta), so a
# stronger externality loop amplifies whatever the base of the power law
# is. At this operating point the base is below 1 and demand shrinks; once
# the platform re-optimizes its share (demo 04) the net effect reverses.
print("\ndemand at (1.7, 0.4) as the externality product grows:")
for ab in (0.2, 0.4, 0.6, 0.8):
    p = MarketParams(alpha=0.38, beta=ab / 0.38, gamma=0.2, psi=0.1, phi=1.5,
                     k1=0.5, f_c=1.122)
    print(f"  alpha*beta={ab:.1f}: demand={demand_reduced(price, share, p):.6f}")
