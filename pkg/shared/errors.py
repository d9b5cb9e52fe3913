""" Exception types shared by the simulator packages and mapped to exit codes by the scripts """


class ValidationError(ValueError):
    """ Invalid argument or violated precondition (exit code 2) """


class ZeroProbabilityError(ValidationError):
    """ Raised when conditioning on an outcome whose probability is below the renormalization threshold """


class NumericalError(ArithmeticError):
    """ A numerical result drifted outside its tolerance (exit code 3) """


class ToleranceError(NumericalError):
    """ Norm or unitarity check failed """

    def __init__(self, what, value, expected, tol):
        self.what = what
        self.value = value
        self.expected = expected
        self.tol = tol
        super().__init__("{} is {!r}, expected {!r} within {:g}".format(what, value, expected, tol))


class TruncationError(NumericalError):
    """ A truncated photon-number expansion kept too little of the norm """

    def __init__(self, achieved_norm, required_norm, cutoff):
        self.achieved_norm = achieved_norm
        self.required_norm = required_norm
        self.cutoff = cutoff
        super().__init__("Cutoff {} keeps a norm of {:.12g}, at least {:.12g} is required"
                         .format(cutoff, achieved_norm, required_norm))


EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


def exit_code_for(error: Exception) -> int:
    """ Returns the CLI exit code for an exception raised by the library """
    if isinstance(error, NumericalError):
        return EXIT_NUMERICAL
    return EXIT_VALIDATION
