# provd/templates/__init__.py
