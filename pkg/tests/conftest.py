from hypothesis import settings

# Exact-arithmetic cases vary wildly in runtime; a wall-clock deadline only
# adds flakiness on slow machines.
settings.register_profile("exact", deadline=None, max_examples=60)
settings.load_profile("exact")
