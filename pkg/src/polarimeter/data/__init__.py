"""Bundled fixture data: the karate club edge list and faction labels."""
