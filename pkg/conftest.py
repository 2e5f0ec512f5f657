# Anchors pytest's rootdir and puts the repo root on sys.path so test
# modules can import shared fixtures from each other.
