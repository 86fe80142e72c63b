/**
 * Collapsible class-hierarchy browser. Children are rendered lazily on
 * first expand so large ontologies stay cheap; every class row offers
 * "add to requested input/output".
 */

import type { ClassNode } from '../api.js';
import { el } from '../dom.js';

export interface OntologyTreeCallbacks {
  onAddInput(iri: string): void;
  onAddOutput(iri: string): void;
}

function renderNode(node: ClassNode, callbacks: OntologyTreeCallbacks): HTMLLIElement {
  const hasChildren = node.children.length > 0;
  const caret = el('span', {
    class: hasChildren ? 'caret collapsed' : 'caret leaf',
    text: hasChildren ? '▸' : '•',
  });
  const row = el(
    'span',
    { class: 'class-row', 'data-iri': node.iri },
    caret,
    el('span', { class: 'class-name', text: node.name, title: node.iri }),
    el('button', {
      class: 'add-input',
      type: 'button',
      title: 'Add to requested input',
      text: '+in',
      onclick: () => callbacks.onAddInput(node.iri),
    }),
    el('button', {
      class: 'add-output',
      type: 'button',
      title: 'Add to requested output',
      text: '+out',
      onclick: () => callbacks.onAddOutput(node.iri),
    }),
  );
  const item = el('li', {}, row);
  if (hasChildren) {
    let expanded = false;
    let childList: HTMLUListElement | null = null;
    caret.addEventListener('click', () => {
      if (!childList) {
        childList = el('ul', { class: 'class-children' });
        for (const child of node.children) childList.append(renderNode(child, callbacks));
        item.append(childList);
      }
      expanded = !expanded;
      childList.style.display = expanded ? '' : 'none';
      caret.textContent = expanded ? '▾' : '▸';
      caret.classList.toggle('collapsed', !expanded);
    });
  }
  return item;
}

export function renderOntologyTree(
  forest: ClassNode[],
  callbacks: OntologyTreeCallbacks,
): HTMLUListElement {
  const root = el('ul', { class: 'class-tree' });
  for (const node of forest) root.append(renderNode(node, callbacks));
  if (forest.length === 0) {
    root.append(el('li', { class: 'empty', text: 'No classes in this ontology.' }));
  }
  return root;
}
