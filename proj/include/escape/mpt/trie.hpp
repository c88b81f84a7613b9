// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/encoding/keccak.hpp>
#include <escape/encoding/rlp.hpp>
#include <escape/mpt/nibbles.hpp>

#include <array>
#include <memory>
#include <optional>
#include <vector>

namespace escape::mpt
{
/// Root of the trie with no entries: keccak256(rlp("")).
inline const Hash256& empty_trie_root()
{
    static const Hash256 root = keccak256(rlp::encode_string({}));
    return root;
}

/// Node RLP blobs along a key path, root node first. Nodes embedded in their
/// parent (encoding shorter than 32 octets) are not listed separately.
struct ProofNodes
{
    std::vector<Bytes> nodes;

    bool operator==(const ProofNodes&) const = default;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable trie node. The RLP encoding and the form in which a parent
/// references this node are computed once, at construction.
struct Node
{
    enum class Kind
    {
        leaf,
        extension,
        branch,
    };

    Kind kind;
    Nibbles path;                       // leaf, extension
    std::array<NodePtr, 16> children;   // branch
    NodePtr child;                      // extension
    Bytes value;                        // leaf; optional on a branch
    Bytes encoded;
    Bytes ref;  // rlp(keccak(encoded)) when encoded is >= 32 octets, else encoded itself

    bool is_embedded() const noexcept { return encoded.size() < 32; }

    static NodePtr make_leaf(Nibbles path, Bytes value)
    {
        auto n = std::make_shared<Node>();
        n->kind = Kind::leaf;
        n->path = std::move(path);
        n->value = std::move(value);
        n->finish();
        return n;
    }

    static NodePtr make_extension(Nibbles path, NodePtr child)
    {
        auto n = std::make_shared<Node>();
        n->kind = Kind::extension;
        n->path = std::move(path);
        n->child = std::move(child);
        n->finish();
        return n;
    }

    static NodePtr make_branch(const std::array<NodePtr, 16>& children, Bytes value)
    {
        auto n = std::make_shared<Node>();
        n->kind = Kind::branch;
        n->children = children;
        n->value = std::move(value);
        n->finish();
        return n;
    }

private:
    void finish()
    {
        Bytes payload;
        auto append = [&payload](BytesView b) { payload.insert(payload.end(), b.begin(), b.end()); };
        switch (kind)
        {
        case Kind::leaf:
            append(rlp::encode_string(hex_prefix_encode(path, true)));
            append(rlp::encode_string(value));
            break;
        case Kind::extension:
            append(rlp::encode_string(hex_prefix_encode(path, false)));
            append(child->ref);
            break;
        case Kind::branch:
            for (const auto& c : children)
            {
                if (c)
                    append(c->ref);
                else
                    payload.push_back(0x80);
            }
            append(rlp::encode_string(value));
            break;
        }
        encoded = rlp::encode_list_payload(payload);
        ref = is_embedded() ? encoded : rlp::encode_string(keccak256(encoded));
    }
};

namespace detail
{
inline Nibbles join(NibblesView a, NibblesView b)
{
    Nibbles out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline Nibbles prepend(std::uint8_t nibble, NibblesView rest)
{
    Nibbles out{nibble};
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

/// Puts `node` below a path prefix, merging with it when it is a leaf or
/// extension so that no extension ever points at another short node.
inline NodePtr with_prefix(NibblesView prefix, NodePtr node)
{
    if (prefix.empty() || !node)
        return node;
    switch (node->kind)
    {
    case Node::Kind::leaf:
        return Node::make_leaf(join(prefix, node->path), node->value);
    case Node::Kind::extension:
        return Node::make_extension(join(prefix, node->path), node->child);
    case Node::Kind::branch:
        break;
    }
    return Node::make_extension(Nibbles(prefix.begin(), prefix.end()), std::move(node));
}

/// Builds the node for a branch position set, collapsing it when fewer than two
/// slots remain occupied.
inline NodePtr normalize_branch(const std::array<NodePtr, 16>& children, Bytes value)
{
    int occupied = 0;
    int last = -1;
    for (int i = 0; i < 16; ++i)
        if (children[i])
        {
            ++occupied;
            last = i;
        }

    if (occupied + (value.empty() ? 0 : 1) >= 2)
        return Node::make_branch(children, std::move(value));
    if (occupied == 0)
        return value.empty() ? nullptr : Node::make_leaf({}, std::move(value));
    const std::uint8_t nib = static_cast<std::uint8_t>(last);
    return with_prefix(NibblesView{&nib, 1}, children[last]);
}

inline NodePtr insert(const NodePtr& node, NibblesView key, const Bytes& value)
{
    if (!node)
        return Node::make_leaf(Nibbles(key.begin(), key.end()), value);

    switch (node->kind)
    {
    case Node::Kind::leaf:
    {
        const auto common = common_prefix(node->path, key);
        if (common == node->path.size() && common == key.size())
            return Node::make_leaf(node->path, value);

        std::array<NodePtr, 16> children{};
        Bytes branch_value;
        const auto old_rest = NibblesView{node->path}.subspan(common);
        const auto new_rest = key.subspan(common);
        if (old_rest.empty())
            branch_value = node->value;
        else
            children[old_rest[0]] = Node::make_leaf(Nibbles(old_rest.begin() + 1, old_rest.end()), node->value);
        if (new_rest.empty())
            branch_value = value;
        else
            children[new_rest[0]] = Node::make_leaf(Nibbles(new_rest.begin() + 1, new_rest.end()), value);
        return with_prefix(key.subspan(0, common), Node::make_branch(children, std::move(branch_value)));
    }
    case Node::Kind::extension:
    {
        const auto common = common_prefix(node->path, key);
        if (common == node->path.size())
            return with_prefix(node->path, insert(node->child, key.subspan(common), value));

        std::array<NodePtr, 16> children{};
        Bytes branch_value;
        const auto old_rest = NibblesView{node->path}.subspan(common);
        children[old_rest[0]] = with_prefix(old_rest.subspan(1), node->child);
        const auto new_rest = key.subspan(common);
        if (new_rest.empty())
            branch_value = value;
        else
            children[new_rest[0]] = Node::make_leaf(Nibbles(new_rest.begin() + 1, new_rest.end()), value);
        return with_prefix(key.subspan(0, common), Node::make_branch(children, std::move(branch_value)));
    }
    case Node::Kind::branch:
    {
        if (key.empty())
            return Node::make_branch(node->children, value);
        auto children = node->children;
        children[key[0]] = insert(children[key[0]], key.subspan(1), value);
        return Node::make_branch(children, node->value);
    }
    }
    return node;
}

inline NodePtr erase(const NodePtr& node, NibblesView key)
{
    if (!node)
        return node;

    switch (node->kind)
    {
    case Node::Kind::leaf:
        return std::equal(node->path.begin(), node->path.end(), key.begin(), key.end()) ? nullptr : node;
    case Node::Kind::extension:
    {
        if (!starts_with(key, node->path))
            return node;
        auto child = erase(node->child, key.subspan(node->path.size()));
        if (child == node->child)
            return node;
        return with_prefix(node->path, std::move(child));
    }
    case Node::Kind::branch:
    {
        if (key.empty())
            return node->value.empty() ? node : normalize_branch(node->children, {});
        auto children = node->children;
        auto child = erase(children[key[0]], key.subspan(1));
        if (child == children[key[0]])
            return node;
        children[key[0]] = std::move(child);
        return normalize_branch(children, node->value);
    }
    }
    return node;
}
}  // namespace detail

/// Hexary Merkle Patricia Trie over raw byte keys. Values are opaque octet
/// strings; callers hash keys themselves when they want a secure trie.
///
/// Copies are cheap and independent: updates rebuild only the nodes on the
/// touched path and share everything else with earlier versions.
class Trie
{
public:
    /// An empty value deletes the key.
    void put(BytesView key, const Bytes& value)
    {
        const auto path = to_nibbles(key);
        if (value.empty())
            root_ = detail::erase(root_, path);
        else
            root_ = detail::insert(root_, path, value);
    }

    void erase(BytesView key) { root_ = detail::erase(root_, to_nibbles(key)); }

    Trie inserted(BytesView key, const Bytes& value) const
    {
        Trie copy{*this};
        copy.put(key, value);
        return copy;
    }

    std::optional<Bytes> get(BytesView key) const
    {
        const auto path = to_nibbles(key);
        NibblesView rest{path};
        const Node* n = root_.get();
        while (n)
        {
            switch (n->kind)
            {
            case Node::Kind::leaf:
                if (std::equal(n->path.begin(), n->path.end(), rest.begin(), rest.end()))
                    return n->value;
                return std::nullopt;
            case Node::Kind::extension:
                if (!starts_with(rest, n->path))
                    return std::nullopt;
                rest = rest.subspan(n->path.size());
                n = n->child.get();
                break;
            case Node::Kind::branch:
                if (rest.empty())
                    return n->value.empty() ? std::nullopt : std::optional<Bytes>{n->value};
                n = n->children[rest[0]].get();
                rest = rest.subspan(1);
                break;
            }
        }
        return std::nullopt;
    }

    bool empty() const noexcept { return root_ == nullptr; }

    Hash256 root_hash() const { return root_ ? keccak256(root_->encoded) : empty_trie_root(); }

    /// Inclusion proof for a present key, exclusion proof otherwise. The empty
    /// trie has an empty proof.
    ProofNodes prove(BytesView key) const
    {
        ProofNodes proof;
        if (!root_)
            return proof;
        const auto path = to_nibbles(key);
        NibblesView rest{path};
        const Node* n = root_.get();
        proof.nodes.push_back(n->encoded);
        while (true)
        {
            const Node* next = nullptr;
            switch (n->kind)
            {
            case Node::Kind::leaf:
                break;
            case Node::Kind::extension:
                if (starts_with(rest, n->path))
                {
                    rest = rest.subspan(n->path.size());
                    next = n->child.get();
                }
                break;
            case Node::Kind::branch:
                if (!rest.empty())
                {
                    next = n->children[rest[0]].get();
                    rest = rest.subspan(1);
                }
                break;
            }
            if (!next)
                return proof;
            if (!next->is_embedded())
                proof.nodes.push_back(next->encoded);
            n = next;
        }
    }

    const NodePtr& root_node() const noexcept { return root_; }

private:
    NodePtr root_;
};

/// Keys of the account and storage tries: keccak256 of a 20-octet address or a
/// 32-octet slot.
inline Bytes secure_key(BytesView raw)
{
    if (raw.size() != 20 && raw.size() != 32)
        fail(Errc::WrongKeyLength, "secure key input must be 20 or 32 octets, got " + std::to_string(raw.size()));
    return keccak256(raw).to_bytes();
}
}  // namespace escape::mpt
