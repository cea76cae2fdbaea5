"""Engine services for exlen."""
