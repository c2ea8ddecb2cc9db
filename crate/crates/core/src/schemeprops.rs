//! Scheme properties of the toric scheme and the Cox scheme, inferred from
//! fan properties and declared properties of the base ring.

use std::fmt;

use crate::grading::{PicardGroup, SubgroupB};
use crate::polyfan::FanProperties;

/// Declared properties of the base ring `R`; `None` means undeclared.
/// Declarations are taken at face value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct BaseRingFlags {
    pub field: Option<bool>,
    pub noetherian: Option<bool>,
    pub reduced: Option<bool>,
    pub connected: Option<bool>,
    pub normal: Option<bool>,
    pub irreducible: Option<bool>,
    pub integral: Option<bool>,
    pub stably_coherent: Option<bool>,
    pub zero: Option<bool>,
}

fn imply(slot: &mut Option<bool>, value: bool) {
    if slot.is_none() {
        *slot = Some(value);
    }
}

impl BaseRingFlags {
    /// The rational numbers, the coefficient field of all computations.
    pub fn rationals() -> Self {
        BaseRingFlags { field: Some(true), ..Default::default() }.closure()
    }

    /// Flag names in report order.
    pub const NAMES: [&'static str; 9] = [
        "field",
        "noetherian",
        "reduced",
        "connected",
        "normal",
        "irreducible",
        "integral",
        "stably_coherent",
        "zero",
    ];

    pub fn get(&self, name: &str) -> Option<bool> {
        match name {
            "field" => self.field,
            "noetherian" => self.noetherian,
            "reduced" => self.reduced,
            "connected" => self.connected,
            "normal" => self.normal,
            "irreducible" => self.irreducible,
            "integral" => self.integral,
            "stably_coherent" => self.stably_coherent,
            "zero" => self.zero,
            _ => None,
        }
    }

    pub fn set(&mut self, name: &str, value: bool) -> bool {
        let slot = match name {
            "field" => &mut self.field,
            "noetherian" => &mut self.noetherian,
            "reduced" => &mut self.reduced,
            "connected" => &mut self.connected,
            "normal" => &mut self.normal,
            "irreducible" => &mut self.irreducible,
            "integral" => &mut self.integral,
            "stably_coherent" => &mut self.stably_coherent,
            "zero" => &mut self.zero,
            _ => return false,
        };
        *slot = Some(value);
        true
    }

    /// Fills undeclared flags implied by declared ones.
    pub fn closure(mut self) -> Self {
        if self.field == Some(true) {
            for slot in [
                &mut self.noetherian,
                &mut self.reduced,
                &mut self.connected,
                &mut self.normal,
                &mut self.irreducible,
                &mut self.integral,
                &mut self.stably_coherent,
            ] {
                imply(slot, true);
            }
            imply(&mut self.zero, false);
        }
        if self.integral == Some(true) {
            imply(&mut self.reduced, true);
            imply(&mut self.irreducible, true);
            imply(&mut self.zero, false);
        }
        if self.zero == Some(true) {
            for slot in [&mut self.noetherian, &mut self.reduced, &mut self.normal, &mut self.stably_coherent] {
                imply(slot, true);
            }
            for slot in [&mut self.field, &mut self.irreducible, &mut self.integral] {
                imply(slot, false);
            }
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// Depends on the named undeclared conditions.
    Conditional(String),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Fails => write!(f, "fails"),
            Verdict::Conditional(c) => write!(f, "conditional({c})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub property: &'static str,
    pub verdict: Verdict,
    pub provenance: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub verdicts: Vec<PropertyVerdict>,
}

impl PropertyReport {
    pub fn get(&self, property: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.property == property).map(|v| &v.verdict)
    }
}

pub const UNCONDITIONAL: &str = "unconditional";
pub const FAITHFULLY_FLAT: &str = "fan-nonempty-or-zero-ring";
pub const INHERITED: &str = "base-ring-or-empty-fan";
pub const INHERITED_NONEMPTY: &str = "base-ring-and-nonempty-fan";
pub const PROPER: &str = "complete-or-empty-or-zero-ring";
pub const COHERENT: &str = "regular-and-stably-coherent";
pub const PICARD_BIG: &str = "picard-finite-index";
pub const SURJECTIVE: &str = "big-subgroup";
pub const BIJECTIVE: &str = "small-subgroup";
pub const POSITIVE: &str = "cone-equals-span";

fn flag_verdict(value: Option<bool>, name: &str) -> Verdict {
    match value {
        Some(true) => Verdict::Holds,
        Some(false) => Verdict::Fails,
        None => Verdict::Conditional(name.to_string()),
    }
}

fn sufficient(conditions: &[(&str, Option<bool>)]) -> Verdict {
    if conditions.iter().all(|(_, v)| *v == Some(true)) {
        return Verdict::Holds;
    }
    let missing: Vec<&str> = conditions.iter().filter(|(_, v)| *v != Some(true)).map(|(n, _)| *n).collect();
    Verdict::Conditional(missing.join(" and "))
}

/// Applies the scheme-property equivalences for `X_Σ(R)` and the sufficient
/// conditions for the Cox scheme `Y_Σ(R)` symbolically.
pub fn scheme_property_report(
    props: &FanProperties,
    flags: &BaseRingFlags,
    pic: &PicardGroup,
    b: &SubgroupB,
) -> PropertyReport {
    let flags = flags.closure();
    let empty = props.is_empty;
    let mut v = Vec::new();
    let mut push = |property: &'static str, verdict: Verdict, provenance: &'static str| {
        v.push(PropertyVerdict { property, verdict, provenance });
    };
    for p in ["separated", "quasicompact", "flat", "finite_presentation"] {
        push(p, Verdict::Holds, UNCONDITIONAL);
    }
    let ff = if empty { flag_verdict(flags.zero, "zero") } else { Verdict::Holds };
    push("faithfully_flat", ff, FAITHFULLY_FLAT);
    for (p, value) in [
        ("reduced", flags.reduced),
        ("connected", flags.connected),
        ("normal", flags.normal),
        ("noetherian", flags.noetherian),
    ] {
        push(p, if empty { Verdict::Holds } else { flag_verdict(value, p) }, INHERITED);
    }
    for (p, value) in [("irreducible", flags.irreducible), ("integral", flags.integral)] {
        push(p, if empty { Verdict::Fails } else { flag_verdict(value, p) }, INHERITED_NONEMPTY);
    }
    let proper = if props.is_complete || empty { Verdict::Holds } else { flag_verdict(flags.zero, "zero") };
    push("proper", proper, PROPER);
    push(
        "structure_sheaf_coherent",
        sufficient(&[("regular", Some(props.is_regular)), ("stably_coherent", flags.stably_coherent)]),
        COHERENT,
    );
    push("picard_big", if pic.index_in_a.is_finite() { Verdict::Holds } else { Verdict::Fails }, PICARD_BIG);
    push("saturated_correspondence_surjective", sufficient(&[("big", Some(b.is_big))]), SURJECTIVE);
    push(
        "saturated_correspondence_bijective",
        sufficient(&[("big", Some(b.is_big)), ("small", Some(b.is_small))]),
        BIJECTIVE,
    );
    push(
        "restricted_cox_ring_positive_finite_type",
        sufficient(&[("cone_equals_span", Some(props.cone_equals_span))]),
        POSITIVE,
    );
    PropertyReport { verdicts: v }
}
