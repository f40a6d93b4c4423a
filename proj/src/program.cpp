#include "jumprl/program.hpp"

namespace jumprl {

Program::Program(Addr entry, std::map<Addr, Block> blocks) : entry_(entry), blocks_(std::move(blocks)) {
    if (!blocks_.contains(entry_)) {
        throw ProgramError("entry block " + std::to_string(entry_.value()) + " is not defined");
    }
    for (const auto& [addr, block] : blocks_) {
        if (const auto* jump = std::get_if<Jump>(&block.terminator)) {
            for (Addr target : {jump->then_target, jump->else_target}) {
                if (!blocks_.contains(target)) {
                    throw ProgramError("block " + std::to_string(addr.value()) + " jumps to undefined block " +
                                       std::to_string(target.value()));
                }
            }
        }
    }
}

const Block& Program::block(Addr a) const {
    auto it = blocks_.find(a);
    if (it == blocks_.end()) {
        throw std::out_of_range("no block at address " + std::to_string(a.value()));
    }
    return it->second;
}

void collect_vars(const Stmt& s, std::set<std::string>& out) {
    std::visit(
        [&](const auto& st) {
            using T = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<T, Assign>) {
                out.insert(st.var);
                collect_vars(st.value, out);
            } else if constexpr (std::is_same_v<T, NondetAssign>) {
                out.insert(st.var);
                collect_vars(st.cond, out);
            } else {
                collect_vars(st.address, out);
                collect_vars(st.value, out);
            }
        },
        s);
}

std::set<std::string> Program::variables() const {
    std::set<std::string> out;
    for (const auto& [addr, block] : blocks_) {
        for (const auto& s : block.stmts) {
            collect_vars(s, out);
        }
        if (const auto* jump = std::get_if<Jump>(&block.terminator)) {
            collect_vars(jump->cond, out);
        } else if (const auto* ij = std::get_if<IJump>(&block.terminator)) {
            collect_vars(ij->target, out);
        }
    }
    return out;
}

} // namespace jumprl
