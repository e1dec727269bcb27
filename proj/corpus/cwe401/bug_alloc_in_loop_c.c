int cwe401_bug_alloc_in_loop_c_main(int c) {
  char *p = 0;
  while (c) {
    p = calloc(4, 4);
    p[0] = 1;
    c = c - 1;
  }
  free(p);
  return 0;
}
