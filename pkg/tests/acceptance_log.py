"""Shared record of acceptance-criterion outcomes, printed after the run."""

RESULTS = []


def report(number, ok, detail=""):
    line = "%s criterion %d%s" % ("PASS" if ok else "FAIL", number, ": " + detail if detail else "")
    RESULTS.append(line)
    print(line)
    return ok
