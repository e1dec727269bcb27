int cwe401_bug_freed_on_one_arm_c_main(int c) {
  char *p = calloc(4, 4);
  if (c) {
    free(p);
  } else {
    p[1] = 2;
  }
  return 0;
}
