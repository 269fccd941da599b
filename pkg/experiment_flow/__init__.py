# experiment_flow/__init__.py

# experiment_flow package
