# Ring families, descriptors and the uniform ring interface.
