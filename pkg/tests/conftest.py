import hypothesis

# Deterministic property tests: derandomize pins the example stream, so every
# run exercises exactly the same cases.
hypothesis.settings.register_profile(
    "fixed", derandomize=True, deadline=None, max_examples=40
)
hypothesis.settings.load_profile("fixed")
