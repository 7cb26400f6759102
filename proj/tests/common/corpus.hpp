#ifndef MANYPOINTS_TESTS_CORPUS_HPP
#define MANYPOINTS_TESTS_CORPUS_HPP

#include <string>
#include <vector>

#include "manypoints/curve.hpp"
#include "manypoints/io.hpp"

namespace manypoints::tests {

// Fixed reference corpus: the projective line over F_2, F_3, F_4, F_5 plus
// three elliptic and two genus-2 imaginary hyperelliptic curves per field.
inline const std::vector<std::string>& corpus_specs() {
    static const std::vector<std::string> specs = {
        "pline p=2 k=1",
        "pline p=3 k=1",
        "pline p=2 k=2",
        "pline p=5 k=1",
        // F_2 elliptic
        "hyperelliptic p=2 k=1 f=[0,0,0,1] h=[1]",
        "hyperelliptic p=2 k=1 f=[0,1,0,1] h=[1]",
        "hyperelliptic p=2 k=1 f=[1,1,0,1] h=[1]",
        // F_2 genus 2
        "hyperelliptic p=2 k=1 f=[0,1,0,0,0,1] h=[1]",
        "hyperelliptic p=2 k=1 f=[1,0,0,0,0,1] h=[0,1]",
        // F_3 elliptic
        "hyperelliptic p=3 k=1 f=[0,1,0,1] h=[]",
        "hyperelliptic p=3 k=1 f=[0,2,1,1] h=[]",
        "hyperelliptic p=3 k=1 f=[1,2,0,1] h=[]",
        // F_3 genus 2
        "hyperelliptic p=3 k=1 f=[0,1,0,0,0,1] h=[]",
        "hyperelliptic p=3 k=1 f=[1,2,0,0,0,1] h=[]",
        // F_4 elliptic (t denotes the generator of F_4)
        "hyperelliptic p=2 k=2 f=[[0,0],[0,0],[0,0],[1,0]] h=[[1,0]]",
        "hyperelliptic p=2 k=2 f=[[0,1],[0,0],[0,0],[1,0]] h=[[1,0]]",
        "hyperelliptic p=2 k=2 f=[[1,0],[0,0],[0,0],[1,0]] h=[[0,0],[1,0]]",
        // F_4 genus 2
        "hyperelliptic p=2 k=2 f=[[0,0],[1,0],[0,0],[0,0],[0,0],[1,0]] h=[[1,0]]",
        "hyperelliptic p=2 k=2 f=[[1,0],[0,0],[0,0],[0,0],[0,0],[1,0]] h=[[0,0],[1,0]]",
        // F_5 elliptic
        "hyperelliptic p=5 k=1 f=[0,1,0,1] h=[]",
        "hyperelliptic p=5 k=1 f=[2,0,0,1] h=[]",
        "hyperelliptic p=5 k=1 f=[1,1,0,1] h=[]",
        // F_5 genus 2
        "hyperelliptic p=5 k=1 f=[0,1,0,0,0,1] h=[]",
        "hyperelliptic p=5 k=1 f=[1,1,0,0,0,1] h=[]",
    };
    return specs;
}

inline std::vector<CurveModel> corpus() {
    std::vector<CurveModel> cs;
    for (auto& s : corpus_specs()) cs.push_back(parse_curve_spec(s));
    return cs;
}

// the L(1) = 6 elliptic curve over F_3 (the place-count equality case)
inline CurveModel exceptional_f3_curve() {
    return parse_curve_spec("hyperelliptic p=3 k=1 f=[0,2,1,1] h=[]");
}

} // namespace manypoints::tests

#endif
