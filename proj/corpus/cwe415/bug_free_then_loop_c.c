int cwe415_bug_free_then_loop_c_main(int c) {
  char *p = calloc(4, 4);
  free(p);
  while (c) {
    c = c - 1;
    free(p);
  }
  return 0;
}
