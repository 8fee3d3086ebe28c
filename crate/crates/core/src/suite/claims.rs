//! Every certified claim and the checks that carry it.

pub struct Claim {
    pub claim: &'static str,
    pub checks: &'static [&'static str],
}

pub static CLAIMS: &[Claim] = &[
    Claim {
        claim: "the 7x7 realization of the Lie algebra is closed under brackets",
        checks: &["lie.closure"],
    },
    Claim {
        claim: "the generic character of U has argument x01 + x10",
        checks: &["lie.character_functional"],
    },
    Claim {
        claim: "each root coordinate spans the root space of its root",
        checks: &["roots.root_spaces"],
    },
    Claim {
        claim: "2ρ = 10α + 5β and the unramified exponents of |det m| and |t|",
        checks: &["roots.character_constants", "stability.constants"],
    },
    Claim {
        claim: "representatives of the twelve Weyl elements",
        checks: &["weyl.table", "weyl.simple_scalars"],
    },
    Claim {
        claim: "the displayed matrices for ẇ_α, ẇ_β, ẇ_l, ẇ0",
        checks: &["weyl.displayed_reps"],
    },
    Claim {
        claim: "the Weyl action on roots",
        checks: &["weyl.action"],
    },
    Claim {
        claim: "the Weyl-invariant bilinear form",
        checks: &["weyl.form_invariance"],
    },
    Claim {
        claim: "the Levi embedding and the zero pattern of P",
        checks: &["levi.parabolic_pattern"],
    },
    Claim {
        claim: "conjugation of N by U_M and Z_M",
        checks: &["levi.conj_um", "levi.conj_zm"],
    },
    Claim {
        claim: "fundamental domains D and D0 with their measures",
        checks: &[
            "levi.canonical_rep",
            "levi.jacobian.domain_d",
            "levi.jacobian.domain_d0",
        ],
    },
    Claim {
        claim: "the decomposition ẇ0⁻¹ n = m n' n̄ with closed forms for n̄",
        checks: &[
            "bigcell.reconstruction",
            "bigcell.solver_oracle",
            "bigcell.nbar_signs",
            "bigcell.general_x10",
        ],
    },
    Claim {
        claim: "the entries of m in terms of n̄",
        checks: &["bigcell.m_entries"],
    },
    Claim {
        claim: "the Bruhat factorization of m in GL2",
        checks: &["bigcell.bruhat"],
    },
    Claim {
        claim: "homogeneity under (x21, x31, x32) ↦ (t x21, t x31, t² x32)",
        checks: &["bigcell.homogeneity"],
    },
    Claim {
        claim: "the expression for x_α",
        checks: &["bigcell.x_alpha"],
    },
    Claim {
        claim: "the multiplication law of N̄",
        checks: &["nbar.group_law", "nbar.associativity", "nbar.inverse"],
    },
    Claim {
        claim: "N̄_κ is a group for large κ, Z_M-equivariant and U₁-stable",
        checks: &["nbar.kappa_certificate"],
    },
    Claim {
        claim: "the twist contributes the net factor ω_π ω(t²)",
        checks: &["stability.ledger", "stability.net_factor"],
    },
];
