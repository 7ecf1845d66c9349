class ExactError(Exception):
    def __init__(self, value):
        self.value = "Exact ERROR: {}".format(value)

    def __str__(self):
        return repr(self.value)


class PolytopeError(Exception):
    def __init__(self, value):
        self.value = "Polytope ERROR: {}".format(value)

    def __str__(self):
        return repr(self.value)


class NestedSetError(Exception):
    def __init__(self, value):
        self.value = "Nested set ERROR: {}".format(value)

    def __str__(self):
        return repr(self.value)


class ConstructionError(Exception):
    def __init__(self, value):
        self.value = "Construction ERROR: {}".format(value)

    def __str__(self):
        return repr(self.value)


class VerificationError(Exception):
    def __init__(self, value):
        self.value = "Verification ERROR: {}".format(value)

    def __str__(self):
        return repr(self.value)


class SanityError(Exception):
    """
    Class to raise a custom error for sanity checks of user input
    """
    def __init__(self, value):
        self.value = "inSANITY ERROR: {}".format(value)

    def __str__(self):
        return repr(self.value)


class ExportError(Exception):
    def __init__(self, value):
        self.value = "Export ERROR: {}".format(value)

    def __str__(self):
        return repr(self.value)
