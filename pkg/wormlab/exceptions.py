class WormlabError(Exception): pass
class InvalidBody(WormlabError): pass
class Degenerate(WormlabError): pass
class OriginNotInterior(WormlabError): pass
class SingularMap(WormlabError): pass
class InvalidCurve(WormlabError): pass
class ZeroLength(WormlabError): pass
class DegenerateBody(WormlabError): pass
class InvalidParam(WormlabError): pass
class NonConvergence(WormlabError): pass
class NormalizationError(WormlabError): pass
class ParseError(WormlabError): pass
class ReportError(WormlabError): pass
class IoError(WormlabError): pass
