//! Small nets with known languages, used by tests, docs and the CLI.

use crate::nets::net::LabeledPetriNet;
use crate::nets::text::parse_net;

/// Well-balanced words over `{a, b}` (Dyck language with `a` opening).
pub const NET_A: &str = "\
places p
trans ta post p:1 label a
trans tb pre p:1 label b
init
final
";

/// `{aⁿbⁿ : n ≥ 0}`. The phase is a token moving from `one` to `two`.
pub const NET_B: &str = "\
places cnt one two
trans ta pre one:1 post one:1 cnt:1 label a
trans sw pre one:1 post two:1 label -
trans tb pre cnt:1 two:1 post two:1 label b
init one:1
final two:1
";

/// Empty language: the final marking is unreachable.
pub const NET_C: &str = "\
places p
init
final p:1
";

/// `a*`: a free loop that never touches the place.
pub const NET_D: &str = "\
places p
trans ta label a
init
final
";

pub fn net_a() -> LabeledPetriNet {
    parse_net(NET_A).expect("fixture")
}

pub fn net_b() -> LabeledPetriNet {
    parse_net(NET_B).expect("fixture")
}

pub fn net_c() -> LabeledPetriNet {
    parse_net(NET_C).expect("fixture")
}

pub fn net_d() -> LabeledPetriNet {
    parse_net(NET_D).expect("fixture")
}

/// All four fixtures with their names.
pub fn all() -> Vec<(&'static str, LabeledPetriNet)> {
    vec![
        ("NET-A", net_a()),
        ("NET-B", net_b()),
        ("NET-C", net_c()),
        ("NET-D", net_d()),
    ]
}
