int cwe416_bug_loop_after_free_c_main(int c) {
  char *p = calloc(4, 4);
  free(p);
  while (c) {
    p[c] = 0;
    c = c - 1;
  }
  return 0;
}
