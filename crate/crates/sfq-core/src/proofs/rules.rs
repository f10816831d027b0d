use core::fmt;

/// The two natural deduction systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum System {
    Nsf,
    NsfP,
}

impl System {
    pub fn name(self) -> &'static str {
        match self {
            System::Nsf => "NSF",
            System::NsfP => "NSF_P",
        }
    }

    pub fn from_name(s: &str) -> Option<System> {
        match s {
            "NSF" | "nsf" => Some(System::Nsf),
            "NSF_P" | "nsf_p" | "NSFP" | "nsfp" => Some(System::NsfP),
            _ => None,
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Primitive inference rules of both systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// An open or dischargeable hypothesis.
    Hyp,
    TopI,
    BotE,
    AndI,
    AndE1,
    AndE2,
    OrI1,
    OrI2,
    OrE,
    Str1,
    Str2,
    St,
    StP,
    ImpI,
    ImpE,
    NegI1,
    NegI2,
    NegIP,
    /// `wneg A, A / bot`.
    WnegE,
    NegE,
    ForallGloI,
    ForallLocI,
    ForallGloE,
    ForallLocE,
    ForallIP,
    ForallEP,
    ExistsGloI,
    ExistsLocI,
    ExistsGloE,
    ExistsLocE,
    Dne,
    Obj,
}

impl Rule {
    pub const ALL: [Rule; 32] = [
        Rule::Hyp,
        Rule::TopI,
        Rule::BotE,
        Rule::AndI,
        Rule::AndE1,
        Rule::AndE2,
        Rule::OrI1,
        Rule::OrI2,
        Rule::OrE,
        Rule::Str1,
        Rule::Str2,
        Rule::St,
        Rule::StP,
        Rule::ImpI,
        Rule::ImpE,
        Rule::NegI1,
        Rule::NegI2,
        Rule::NegIP,
        Rule::WnegE,
        Rule::NegE,
        Rule::ForallGloI,
        Rule::ForallLocI,
        Rule::ForallGloE,
        Rule::ForallLocE,
        Rule::ForallIP,
        Rule::ForallEP,
        Rule::ExistsGloI,
        Rule::ExistsLocI,
        Rule::ExistsGloE,
        Rule::ExistsLocE,
        Rule::Dne,
        Rule::Obj,
    ];

    /// Tag used in proof documents.
    pub fn tag(self) -> &'static str {
        match self {
            Rule::Hyp => "hyp",
            Rule::TopI => "top_i",
            Rule::BotE => "bot_e",
            Rule::AndI => "and_i",
            Rule::AndE1 => "and_e1",
            Rule::AndE2 => "and_e2",
            Rule::OrI1 => "or_i1",
            Rule::OrI2 => "or_i2",
            Rule::OrE => "or_e",
            Rule::Str1 => "str1",
            Rule::Str2 => "str2",
            Rule::St => "st",
            Rule::StP => "st_p",
            Rule::ImpI => "imp_i",
            Rule::ImpE => "imp_e",
            Rule::NegI1 => "neg_i1",
            Rule::NegI2 => "neg_i2",
            Rule::NegIP => "neg_i_p",
            Rule::WnegE => "wneg_e",
            Rule::NegE => "neg_e",
            Rule::ForallGloI => "forall_glo_i",
            Rule::ForallLocI => "forall_loc_i",
            Rule::ForallGloE => "forall_glo_e",
            Rule::ForallLocE => "forall_loc_e",
            Rule::ForallIP => "forall_i_p",
            Rule::ForallEP => "forall_e_p",
            Rule::ExistsGloI => "exists_glo_i",
            Rule::ExistsLocI => "exists_loc_i",
            Rule::ExistsGloE => "exists_glo_e",
            Rule::ExistsLocE => "exists_loc_e",
            Rule::Dne => "dne",
            Rule::Obj => "obj",
        }
    }

    pub fn from_tag(s: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.tag() == s)
    }

    /// Number of premises.
    pub fn arity(self) -> usize {
        match self {
            Rule::Hyp | Rule::TopI | Rule::Dne | Rule::Obj => 0,
            Rule::AndI | Rule::ImpE | Rule::WnegE | Rule::NegE | Rule::ForallLocE | Rule::ExistsLocI => 2,
            Rule::ExistsGloE | Rule::ExistsLocE => 2,
            Rule::OrE => 3,
            _ => 1,
        }
    }

    pub fn in_system(self, system: System) -> bool {
        match self {
            Rule::StP | Rule::NegIP | Rule::ForallIP | Rule::ForallEP | Rule::Dne | Rule::Obj => system == System::NsfP,
            Rule::St
            | Rule::NegI1
            | Rule::NegI2
            | Rule::WnegE
            | Rule::ForallGloI
            | Rule::ForallLocI
            | Rule::ForallGloE
            | Rule::ForallLocE => system == System::Nsf,
            _ => true,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}
