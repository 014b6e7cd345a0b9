# Syzygies, free resolutions and projective dimension.
