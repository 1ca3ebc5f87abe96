#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pca/k1.hpp"
#include "pca/kernel.hpp"
#include "pca/witness.hpp"

namespace pca::red {

// e with e·⟨a,b⟩ ≃ a·b: composing both projections out of the pair.
Element halting_ce_element(Model& model, StdLib& lib);

// f = ⟨e,·⟩-maker: f·a = ⟨e,a⟩, so a ∈ dom(e) iff f(a) lands in the halting set.
Element m_reduce_to_H(Model& model, StdLib& lib, Element e);

// (f_KH, f_HK): f_KH·a = ⟨a,a⟩ reduces self-halting to pair-halting;
// f_HK·x = λ*z.(x·fst)(x·snd) reduces pair-halting to self-halting.
std::pair<Element, Element> k_h_equivalence(Model& model, StdLib& lib);

// Each refuter takes a claimed decider/separator/extension and returns a
// replayable witness of the contradiction (or of the candidate being
// ill-typed for the claim).

Witness refute_halting_decider(Model& model, StdLib& lib, Element f, Fuel fuel);

Witness refute_separator(Model& model, StdLib& lib, Element c, Fuel fuel);

// f claims to be a total extension of the partial "apply-to-self then tag"
// map; c01 must distinguish numeral 1 from everything else (1̄ ↦ 1̄, else 0̄).
Witness refute_total_extension(Model& model, StdLib& lib, Element f,
                               Element c01, Fuel fuel);

// r = f∘g transports a total extension across the pair-halting reduction.
Element extension_transfer(Model& model, StdLib& lib, Element f);

// Under an injective numbering the totalize-up-to-kernel claim collapses to
// literal extension; refuses (throws) when the kernel is not the identity.
Witness refute_precomplete_injective(Model& model, StdLib& lib,
                                     Element totalizer,
                                     const k1::NumberingKernel& kernel,
                                     Element c01, Fuel fuel);

// First-model separator element: 1̄ ↦ 1̄, everything else ↦ 0̄.
Element make_c01(k1::K1Model& m, StdLib& lib);

// b with b·a = a·a, the self-application element.
Element diagonal_element(Model& model, StdLib& lib);

// Named candidate elements to feed the refuters (all total on the first
// model, so every one of them produces a genuine contradiction witness).
std::vector<std::pair<std::string, Element>> candidate_halting_deciders(
    k1::K1Model& m, StdLib& lib);
std::vector<std::pair<std::string, Element>> candidate_separators(
    k1::K1Model& m, StdLib& lib);
std::vector<std::pair<std::string, Element>> candidate_total_extensions(
    k1::K1Model& m, StdLib& lib);

}  // namespace pca::red
