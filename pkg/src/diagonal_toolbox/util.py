from .essentials import Outcome, OutputFormat

EXIT_INPUT_ERROR = 64
EXIT_NO_BUILDER = 5


# (work bound, knot depth) of each --precision level
def get_precision_bounds(level):
    switcher = {
        1: (10 ** 4, 64),
        2: (10 ** 5, 512),
        3: (10 ** 6, 2 ** 14)
    }
    return switcher.get(int(level))


def get_outcome(name):
    switcher = {
        'Diagonal': Outcome.DIAGONAL,
        'NotDiagonal': Outcome.NOT_DIAGONAL,
        'KernelInconclusive': Outcome.KERNEL_INCONCLUSIVE,
        'PrecisionUnknown': Outcome.PRECISION_UNKNOWN
    }
    return switcher.get(name)


def get_outcome_name(outcome):
    for name in ('Diagonal', 'NotDiagonal', 'KernelInconclusive', 'PrecisionUnknown'):
        if get_outcome(name) is outcome:
            return name


def get_output_format(name):
    switcher = {
        'json': OutputFormat.JSON,
        'text': OutputFormat.TEXT
    }
    return switcher.get(name)


def get_exit_code(outcome):
    # exit status of the check/explain commands is the outcome's value
    return outcome.value
