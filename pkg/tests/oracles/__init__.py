"""Independent reference solutions used by the tests."""
