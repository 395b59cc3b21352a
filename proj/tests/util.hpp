#pragma once

// Shared randomized-model builders for the test binaries. Everything is
// seeded, so failures reproduce.

#include <random>
#include <string>

#include "adasync/aps.hpp"
#include "adasync/pda.hpp"

namespace testutil {

using namespace adasync;

// Complete deterministic PDA with `syms` stack letters (last one is bottom).
inline Pda random_det_pda(std::mt19937& rng, int states, int inputs, int syms) {
    Pda pda;
    for (int q = 0; q < states; ++q) pda.state_names.push_back("q" + std::to_string(q));
    for (int a = 0; a < inputs; ++a) pda.input_names.push_back("a" + std::to_string(a));
    for (int s = 0; s + 1 < syms; ++s) pda.sym_names.push_back("s" + std::to_string(s));
    pda.sym_names.push_back("bot");
    pda.bottom = syms - 1;
    std::uniform_int_distribution<int> state_d(0, states - 1);
    std::uniform_int_distribution<int> len_d(0, 2);
    std::uniform_int_distribution<int> sym_d(0, syms > 1 ? syms - 2 : 0);
    for (StateId q = 0; q < states; ++q)
        for (LetterId a = 0; a < inputs; ++a)
            for (SymId A = 0; A < syms; ++A) {
                Rule r{q, a, A, state_d(rng), {}};
                int len = len_d(rng);
                for (int i = 0; i < len && syms > 1; ++i) r.push.push_back(sym_d(rng));
                if (A == pda.bottom) r.push.push_back(pda.bottom);
                pda.rules.push_back(std::move(r));
            }
    pda.validate();
    return pda;
}

// Possibly nondeterministic and incomplete PDA; callers complete() it.
inline Pda random_pda(std::mt19937& rng, int states, int inputs, int syms, int extra_rules) {
    Pda pda = random_det_pda(rng, states, inputs, syms);
    std::uniform_int_distribution<int> state_d(0, states - 1);
    std::uniform_int_distribution<int> input_d(0, inputs - 1);
    std::uniform_int_distribution<int> sym_d(0, syms - 1);
    std::uniform_int_distribution<int> push_d(0, syms > 1 ? syms - 2 : 0);
    std::uniform_int_distribution<int> len_d(0, 2);
    for (int i = 0; i < extra_rules; ++i) {
        Rule r{state_d(rng), input_d(rng), sym_d(rng), state_d(rng), {}};
        int len = len_d(rng);
        for (int j = 0; j < len && syms > 1; ++j) r.push.push_back(push_d(rng));
        if (r.pop == pda.bottom) r.push.push_back(pda.bottom);
        pda.rules.push_back(std::move(r));
    }
    pda.validate();
    return pda;
}

// Random single-branch system with `syms` stack letters (last one is bottom).
inline Nps random_nps(std::mt19937& rng, int states, int syms, int rules) {
    Nps nps;
    for (int q = 0; q < states; ++q) nps.state_names.push_back("p" + std::to_string(q));
    for (int s = 0; s + 1 < syms; ++s) nps.sym_names.push_back("s" + std::to_string(s));
    nps.sym_names.push_back("bot");
    nps.bottom = syms - 1;
    std::uniform_int_distribution<int> state_d(0, states - 1);
    std::uniform_int_distribution<int> sym_d(0, syms - 1);
    std::uniform_int_distribution<int> push_d(0, syms > 1 ? syms - 2 : 0);
    std::uniform_int_distribution<int> len_d(0, 2);
    for (int i = 0; i < rules; ++i) {
        NpsRule r;
        r.src = state_d(rng);
        r.pop = sym_d(rng);
        r.dst = state_d(rng);
        int len = len_d(rng);
        for (int j = 0; j < len && syms > 1; ++j) r.push.push_back(push_d(rng));
        if (r.pop == nps.bottom) r.push.push_back(nps.bottom);
        nps.rules.push_back(std::move(r));
    }
    return nps;
}

// Random alternating system; branch count 1..3, bottom-popping branches keep
// the bottom discipline.
inline Aps random_aps(std::mt19937& rng, int states, int syms, int rules) {
    Aps aps;
    for (int q = 0; q < states; ++q) aps.state_names.push_back("p" + std::to_string(q));
    for (int s = 0; s + 1 < syms; ++s) aps.sym_names.push_back("s" + std::to_string(s));
    aps.sym_names.push_back("bot");
    aps.bottom = syms - 1;
    std::uniform_int_distribution<int> state_d(0, states - 1);
    std::uniform_int_distribution<int> sym_d(0, syms - 1);
    std::uniform_int_distribution<int> push_d(0, syms > 1 ? syms - 2 : 0);
    std::uniform_int_distribution<int> len_d(0, 2);
    std::uniform_int_distribution<int> branch_d(1, 3);
    aps.init = state_d(rng);
    aps.fin = state_d(rng);
    for (int i = 0; i < rules; ++i) {
        ApsRule r;
        r.src = state_d(rng);
        r.pop = sym_d(rng);
        int nb = branch_d(rng);
        for (int b = 0; b < nb; ++b) {
            ApsBranch br;
            br.dst = state_d(rng);
            int len = len_d(rng);
            for (int j = 0; j < len && syms > 1; ++j) br.push.push_back(push_d(rng));
            if (r.pop == aps.bottom) br.push.push_back(aps.bottom);
            r.branches.push_back(std::move(br));
        }
        aps.rules.push_back(std::move(r));
    }
    aps.validate();
    return aps;
}

}  // namespace testutil
