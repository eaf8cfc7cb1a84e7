/** Offset math for text highlighted inside a debate pane.  Spans can only
 * be created from pane selections, so the span text always equals the
 * debate substring at its offsets. */

import type { Span, SpanSource } from "./types.js";

/** Normalize a raw selection range against the pane's full text: trims
 * surrounding whitespace while keeping text === paneText.slice(start, end).
 * Returns null for empty or whitespace-only selections. */
export function spanFromOffsets(
  paneText: string,
  source: SpanSource,
  rawStart: number,
  rawEnd: number
): Span | null {
  let start = Math.max(0, Math.min(rawStart, rawEnd));
  let end = Math.min(paneText.length, Math.max(rawStart, rawEnd));
  while (start < end && /\s/.test(paneText[start])) start += 1;
  while (end > start && /\s/.test(paneText[end - 1])) end -= 1;
  if (start >= end) return null;
  return { source, start, end, text: paneText.slice(start, end) };
}

/** Resolve the current DOM selection to offsets within a pane element that
 * renders the debate text as a single text node.  Returns null when the
 * selection is empty or falls outside the pane (selections elsewhere can
 * never become spans). */
export function selectionOffsets(pane: HTMLElement): { start: number; end: number } | null {
  const selection = window.getSelection();
  if (!selection || selection.rangeCount === 0 || selection.isCollapsed) return null;
  const range = selection.getRangeAt(0);
  const textNode = pane.firstChild;
  if (!textNode) return null;
  if (range.startContainer !== textNode || range.endContainer !== textNode) return null;
  return { start: range.startOffset, end: range.endOffset };
}
