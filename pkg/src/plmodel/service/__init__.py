"""HTTP service wrapping the core library (FastAPI)."""
