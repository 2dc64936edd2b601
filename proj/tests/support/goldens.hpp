#pragma once

// Expected identification outputs for the corpus graphs, written in the text
// formula format. Bound variables that shadow a free variable or an outer
// binder carry explicit primes; canonical comparison is alpha-invariant, so
// this is only a choice of presentation.

namespace goldens {

// ---- introductory eight-vertex graph (fig1a), P_x(y) ----

inline const char* kFig1aId =
    "sum_{z2,z4,z3,z1} [ "
    "  sum_{w1',w2',x',z3',y'} [ P(y'|w1',z2,z4,w2',z3',x',z1) P(x'|w1',z2,z4,w2',z3') "
    "                            P(z3'|w1',z2,z4,w2') P(w2'|w1',z2,z4) P(z2|w1') P(w1') ] "
    "  ( sum_{w1',w2',x'} [ P(y|w1',z2,z4,w2',z3,x',z1) P(x'|w1',z2,z4,w2',z3) "
    "                       P(z3|w1',z2,z4,w2') P(w2'|w1',z2,z4) P(z2|w1') P(w1') ] "
    "  / sum_{w1',w2',x',y'} [ P(y'|w1',z2,z4,w2',z3,x',z1) P(x'|w1',z2,z4,w2',z3) "
    "                          P(z3|w1',z2,z4,w2') P(w2'|w1',z2,z4) P(z2|w1') P(w1') ] ) "
    "  P(z4|w1,z2) P(z1|w1,z2,z4,w2,x) P(z3|z2) ]";

inline const char* kFig1aPid =
    "sum_{z2,z1} [ sum_{x'} [ P(y|z2,z1,x') P(x'|z2) P(z2) ] P(z1|z2,x) ]";

// ---- fig2: interceptor removal, P_x(y) ----

inline const char* kFig2aId =
    "sum_{z} [ P(z|w1,w2,x) "
    "  sum_{w1',w2',x'} [ P(y|w1',w2',x',z) P(x'|w1',w2') P(w2'|w1') P(w1') ] ]";

inline const char* kFrontDoor =
    "sum_{z} [ P(z|x) sum_{x'} [ P(y|x',z) P(x') ] ]";

// ---- fig3: interceptor removal with an intervened interceptor ----

inline const char* kFig3aId =
    "sum_{z} [ P(y1|w2,w1,x2,x1,z) P(z|w2,x2) "
    "  sum_{w2',x2'} [ P(y2|w2',x2',z) P(x2'|w2') P(w2') ] ]";

inline const char* kFig3aPid =
    "sum_{z} [ P(z|x2) P(y1|x1,x2,z) sum_{x2'} [ P(y2|x2',z) P(x2') ] ]";

// ---- fig5: single-connector removal ----

inline const char* kFig5aId =
    "sum_{w1,w2,z} [ P(w1|x) P(w2|x,w1) P(z|x,w1,w2) "
    "  sum_{x'} [ P(y|x',w1,w2,z) P(x') ] ]";

// ---- fig6: single-connector removal with a fraction-shaped result ----

inline const char* kFig6aId =
    "sum_{w1,w2,z2} [ P(y|w1,w2,z2,z1,x) P(x|w1,w2,z2,z1) P(z2|w1,w2) P(w2|w1) P(w1) ] "
    "/ sum_{w1,w2,z2,y'} [ P(y'|w1,w2,z2,z1,x) P(x|w1,w2,z2,z1) P(z2|w1,w2) P(w2|w1) P(w1) ]";

// the typeset variant holds w1 fixed instead of summing it out; numerically
// equal on every model of the graph
inline const char* kFig6aIdTypeset =
    "sum_{w2,z2} [ P(y|w1,w2,z2,z1,x) P(x|w1,w2,z2,z1) P(z2|w1,w2) P(w2|w1) ] "
    "/ sum_{w2,z2,y'} [ P(y'|w1,w2,z2,z1,x) P(x|w1,w2,z2,z1) P(z2|w1,w2) P(w2|w1) ]";

inline const char* kFig6aPid =
    "sum_{z2} [ P(y|z2,z1,x) P(x|z2,z1) P(z2) ] "
    "/ sum_{z2,y'} [ P(y'|z2,z1,x) P(x|z2,z1) P(z2) ]";

// ---- fig7: latent projection of a single vertex ----

inline const char* kFig7aId =
    "sum_{z3,z1,z2} [ "
    "  sum_{x',z3',y'} [ P(y'|z2,x',z3',z1) P(z3'|z2,x') P(x'|z2) P(z2) ] "
    "  ( sum_{x'} [ P(y|z2,x',z3,z1) P(z3|z2,x') P(x'|z2) P(z2) ] "
    "  / sum_{x',y'} [ P(y'|z2,x',z3,z1) P(z3|z2,x') P(x'|z2) P(z2) ] ) "
    "  P(z3|z2) P(z1|z2,x) ]";

inline const char* kFig7aPid =
    "sum_{z2,z1} [ sum_{x'} [ P(y|z2,x',z1) P(x'|z2) P(z2) ] P(z1|z2,x) ]";

// ---- fig8: the order of the latent-projection loop picks the formula ----

inline const char* kFig8BackDoor = "sum_{w} [ P(y|w,x) P(w) ]";
inline const char* kFig8FrontDoor = kFrontDoor;

// ---- fig9: recursive interceptor removal ----

inline const char* kFig9aId =
    "sum_{z4} [ "
    "  ( sum_{z2,y'} [ P(y'|z3,z2,z1,x,z4) P(z4|z3,z2,z1,x) P(x|z3,z2,z1) P(z2|z3) P(z3) ] "
    "  / sum_{z2,z4',y'} [ P(y'|z3,z2,z1,x,z4') P(z4'|z3,z2,z1,x) P(x|z3,z2,z1) P(z2|z3) P(z3) ] ) "
    "  ( sum_{z2} [ P(y|z3,z2,z1,x,z4) P(z4|z3,z2,z1,x) P(x|z3,z2,z1) P(z2|z3) P(z3) ] "
    "  / sum_{z2,y'} [ P(y'|z3,z2,z1,x,z4) P(z4|z3,z2,z1,x) P(x|z3,z2,z1) P(z2|z3) P(z3) ] ) ]";

inline const char* kFig9aPid =
    "sum_{z2,z3,z4} [ P(y|z3,z2,z1,x,z4) P(z4|z3,z2,z1,x) P(x|z3,z2,z1) P(z2|z3) P(z3) ] "
    "/ sum_{z2,z3,z4,y'} [ P(y'|z3,z2,z1,x,z4) P(z4|z3,z2,z1,x) P(x|z3,z2,z1) P(z2|z3) P(z3) ]";

// ---- fig10: recursive single-connector removal ----

inline const char* kFig10aId =
    "sum_{z3} [ "
    "  ( sum_{z2} [ P(y|z2,z3,z1,x) P(x|z2,z3,z1) P(z3|z2) P(z2) ] "
    "  / sum_{z2,y'} [ P(y'|z2,z3,z1,x) P(x|z2,z3,z1) P(z3|z2) P(z2) ] ) "
    "  sum_{z2,x',y'} [ P(y'|z2,z3,z1,x') P(x'|z2,z3,z1) P(z3|z2) P(z2) ] ]";

inline const char* kFig10aPid =
    "sum_{z2,z3} [ P(y|z2,z3,z1,x) P(x|z2,z3,z1) P(z3|z2) P(z2) ] "
    "/ sum_{z2,z3,y'} [ P(y'|z2,z3,z1,x) P(x|z2,z3,z1) P(z3|z2) P(z2) ]";

// ---- fig11: recursive latent projection ----

inline const char* kFig11aId =
    "sum_{w} [ "
    "  ( sum_{z2,y'} [ P(y'|z2,z1,x,w) P(w|z2,z1,x) P(x|z2,z1) P(z2) ] "
    "  / sum_{z2,w',y'} [ P(y'|z2,z1,x,w') P(w'|z2,z1,x) P(x|z2,z1) P(z2) ] ) "
    "  ( sum_{z2} [ P(y|z2,z1,x,w) P(w|z2,z1,x) P(x|z2,z1) P(z2) ] "
    "  / sum_{z2,y'} [ P(y'|z2,z1,x,w) P(w|z2,z1,x) P(x|z2,z1) P(z2) ] ) ]";

inline const char* kFig11aPid =
    "sum_{z2,w} [ P(y|z2,z1,x,w) P(w|z2,z1,x) P(x|z2,z1) P(z2) ] "
    "/ sum_{z2,w,y'} [ P(y'|z2,z1,x,w) P(w|z2,z1,x) P(x|z2,z1) P(z2) ]";

}  // namespace goldens
