# Repository root on sys.path so `core`, `plugins` and `cli` import in tests.
