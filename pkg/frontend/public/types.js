// Payload shapes of the reduction service API.
// Rewrite kinds, mirroring the service's schema table; used only to color
// and summarize the log, never to decide anything.
export const REWRITE_KINDS = {
    "K-A": "BETA",
    "I-A": "TERMINATION",
    "I-S": "TERMINATION",
    "K-S": "TERMINATION",
    "S-K": "TERMINATION",
    "S-K2": "TERMINATION",
    "A-K": "TERMINATION",
    "A-S": "DIST",
    "S-S": "DIST",
    "S-A": "DIST",
    COMB: "COMPOSE",
};
