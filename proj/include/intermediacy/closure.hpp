#ifndef intermediacy_closure_hpp
#define intermediacy_closure_hpp

#include <string>
#include <vector>

#include "intermediacy/graph.hpp"

namespace intermediacy {

// A Dag restricted to the nodes lying on at least one source-target path,
// with designated source and target. Every computation in the library runs
// on a closure.
class StContext {
public:
    static StContext extract(const Dag& dag, const std::string& source_id,
                             const std::string& target_id);

    const Dag& dag() const { return dag_; }
    uint32_t source() const { return source_; }
    uint32_t target() const { return target_; }

    // In/out-degree within the closure.
    uint32_t citation_count(uint32_t v) const { return dag_.in_degree(v); }
    uint32_t reference_count(uint32_t v) const { return dag_.out_degree(v); }

    size_t node_count() const { return dag_.node_count(); }
    size_t edge_count() const { return dag_.edge_count(); }

    // Mean number of citation links per publication, k = 2m/n.
    double mean_degree() const {
        return 2.0 * static_cast<double>(edge_count()) / static_cast<double>(node_count());
    }

private:
    StContext(Dag dag, uint32_t source, uint32_t target)
        : dag_(std::move(dag)), source_(source), target_(target) {}

    Dag dag_;
    uint32_t source_;
    uint32_t target_;
};

} // namespace intermediacy

#endif
