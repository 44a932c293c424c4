from enum import Enum


class LogLevel(str, Enum):
    DEBUG = "debug"
    INFO = "info"
    WARN = "warn"
    ERROR = "error"


class ReachMode(str, Enum):
    STRONG = "strong"
    WEAK = "weak"


class ProductKind(str, Enum):
    STRONG = "strong"
    LEX = "lex"


class CertificateKind(str, Enum):
    MODEL = "model"
    EMBEDDING = "embedding"
    TREE_DECOMPOSITION = "tree-decomposition"
    HL_PARTITION = "hl-partition"
    QUEUE_LAYOUT = "queue-layout"
    VERTEX_ORDER = "vertex-order"
    GAP_CHARGING = "gap-charging"
    ENGINE_BUNDLE = "engine-bundle"
    HIERARCHY_REPORT = "hierarchy-report"


class Gadget(str, Enum):
    CONTRACTION = "contraction"
    KPLANAR = "kplanar"
    STRING = "string"
    CLUSTER = "cluster"
    IC_PLANAR = "ic-planar"
    FANBUNDLE = "fanbundle"


class GraphClass(str, Enum):
    GENERIC = "generic"
    FAN_PLANAR = "fan-planar"
    K_PLANAR = "k-planar"
    STRING = "string"
    FAN_BUNDLE = "k-fan-bundle"
    CLIQUE_LIFT = "clique-lift"
    POWER = "power"
    SHORTCUT = "shortcut"
    CLUSTER = "cluster"
    PRODUCT = "product"
    QUEUE = "queue"
    GAP_LOWER = "gap-lower"
